//! (sigma, rho) problem descriptions: finite/co-finite subsets of the
//! naturals, the named problem catalog, and LCVP constraint matrices.

use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// A finite or co-finite subset of the natural numbers. Canonical form keeps
/// the element (or complement-element) list strictly increasing; a finite set
/// is never empty, while `Cofinite(vec![])` is all of N.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum SetSpec {
    Finite(Vec<usize>),
    Cofinite(Vec<usize>),
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum SetSpecParseError {
    #[error("empty set token")]
    Empty,
    #[error("finite set may not be empty: `{0}`")]
    EmptyFinite(String),
    #[error("malformed set token `{0}`")]
    Malformed(String),
}

fn canonical(mut elems: Vec<usize>) -> Vec<usize> {
    elems.sort_unstable();
    elems.dedup();
    elems
}

impl SetSpec {
    pub fn finite<I: IntoIterator<Item = usize>>(elems: I) -> SetSpec {
        let elems = canonical(elems.into_iter().collect());
        assert!(!elems.is_empty(), "finite SetSpec may not be empty");
        SetSpec::Finite(elems)
    }

    pub fn cofinite<I: IntoIterator<Item = usize>>(complement: I) -> SetSpec {
        SetSpec::Cofinite(canonical(complement.into_iter().collect()))
    }

    /// All of N.
    pub fn naturals() -> SetSpec {
        SetSpec::Cofinite(vec![])
    }

    /// N+ = {1, 2, ...}.
    pub fn positives() -> SetSpec {
        SetSpec::Cofinite(vec![0])
    }

    /// {t, t+1, ...}.
    pub fn at_least(t: usize) -> SetSpec {
        SetSpec::Cofinite((0..t).collect())
    }

    /// {0, 1, ..., t}.
    pub fn up_to(t: usize) -> SetSpec {
        SetSpec::Finite((0..=t).collect())
    }

    pub fn singleton(x: usize) -> SetSpec {
        SetSpec::Finite(vec![x])
    }

    pub fn is_cofinite(&self) -> bool {
        matches!(self, SetSpec::Cofinite(_))
    }

    pub fn contains(&self, c: usize) -> bool {
        match self {
            SetSpec::Finite(e) => e.binary_search(&c).is_ok(),
            SetSpec::Cofinite(e) => e.binary_search(&c).is_err(),
        }
    }

    /// The smallest d such that membership of any count c is decided by
    /// min(c, d): 0 for N, 1 + max(elements) for finite sets, 1 + max of the
    /// complement otherwise.
    pub fn d_value(&self) -> usize {
        match self {
            SetSpec::Finite(e) => e.last().unwrap() + 1,
            SetSpec::Cofinite(e) => e.last().map_or(0, |x| x + 1),
        }
    }

    /// Membership decided from a count already truncated at d. Requires
    /// d >= d_value(self) and c <= d; for c = d the answer is whether counts
    /// beyond the horizon lie in the set, i.e. whether the set is co-finite.
    pub fn truncated_member(&self, c: usize, d: usize) -> bool {
        assert!(
            d >= self.d_value(),
            "truncation level {d} below d-value {}",
            self.d_value()
        );
        assert!(c <= d, "count {c} not truncated at {d}");
        if c < d {
            self.contains(c)
        } else {
            self.is_cofinite()
        }
    }
}

impl fmt::Display for SetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, elems: &[usize]| {
            for (i, e) in elems.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            Ok(())
        };
        match self {
            SetSpec::Finite(e) => {
                write!(f, "{{")?;
                list(f, e)?;
                write!(f, "}}")
            }
            SetSpec::Cofinite(e) if e.is_empty() => write!(f, "N"),
            SetSpec::Cofinite(e) if e == &[0] => write!(f, "N+"),
            SetSpec::Cofinite(e) => {
                // contiguous complement 0..t prints as a lower bound
                if e.iter().copied().eq(0..e.len()) {
                    write!(f, ">={}", e.len())
                } else {
                    write!(f, "co{{")?;
                    list(f, e)?;
                    write!(f, "}}")
                }
            }
        }
    }
}

impl fmt::Debug for SetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for SetSpec {
    type Err = SetSpecParseError;

    /// Grammar: `N` | `N+` | `{a,b,...}` | `co{a,b,...}` | `>=d`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse_list = |body: &str| -> Result<Vec<usize>, SetSpecParseError> {
            if body.trim().is_empty() {
                return Ok(vec![]);
            }
            body.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| SetSpecParseError::Malformed(s.to_string()))
                })
                .collect()
        };
        let s = s.trim();
        if s.is_empty() {
            return Err(SetSpecParseError::Empty);
        }
        if s == "N" {
            return Ok(SetSpec::naturals());
        }
        if s == "N+" {
            return Ok(SetSpec::positives());
        }
        if let Some(t) = s.strip_prefix(">=") {
            let t = t
                .parse::<usize>()
                .map_err(|_| SetSpecParseError::Malformed(s.to_string()))?;
            return Ok(SetSpec::at_least(t));
        }
        if let Some(body) = s.strip_prefix("co{").and_then(|r| r.strip_suffix('}')) {
            return Ok(SetSpec::cofinite(parse_list(body)?));
        }
        if let Some(body) = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
            let elems = parse_list(body)?;
            if elems.is_empty() {
                return Err(SetSpecParseError::EmptyFinite(s.to_string()));
            }
            return Ok(SetSpec::finite(elems));
        }
        Err(SetSpecParseError::Malformed(s.to_string()))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Objective {
    Minimize,
    Maximize,
    Exists,
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::Minimize => "min",
            Objective::Maximize => "max",
            Objective::Exists => "exists",
        })
    }
}

impl FromStr for Objective {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "min" => Ok(Objective::Minimize),
            "max" => Ok(Objective::Maximize),
            "exists" => Ok(Objective::Exists),
            other => Err(format!("unknown objective `{other}` (min|max|exists)")),
        }
    }
}

/// A (sigma, rho) domination problem: members of the solution set must see a
/// sigma-count of solution neighbors, non-members a rho-count.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Problem {
    pub sigma: SetSpec,
    pub rho: SetSpec,
    pub objective: Objective,
    pub name: Option<String>,
}

impl Problem {
    pub fn new(sigma: SetSpec, rho: SetSpec, objective: Objective) -> Problem {
        Problem {
            sigma,
            rho,
            objective,
            name: None,
        }
    }

    pub fn d_value(&self) -> usize {
        self.sigma.d_value().max(self.rho.d_value())
    }
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown problem `{name}`; available: {available}")]
    Unknown { name: String, available: String },
    #[error("problem `{name}` does not take a parameter")]
    UnexpectedParam { name: String },
    #[error("problem `{name}` requires d >= {min}, got {got}")]
    ParamOutOfRange { name: String, min: usize, got: usize },
}

pub struct CatalogRow {
    pub name: &'static str,
    pub parameterized: bool,
    pub default_param: usize,
    pub objective: Objective,
}

const CATALOG: &[CatalogRow] = &[
    row("independent-set", Objective::Maximize),
    row("dominating-set", Objective::Minimize),
    row("maximal-independent-set", Objective::Minimize),
    row("total-dominating-set", Objective::Minimize),
    row("strong-stable-set", Objective::Maximize),
    row("perfect-code", Objective::Exists),
    row("total-nearly-perfect-set", Objective::Exists),
    row("weakly-perfect-dominating-set", Objective::Exists),
    row("total-perfect-dominating-set", Objective::Exists),
    row("induced-matching", Objective::Maximize),
    row("dominating-induced-matching", Objective::Minimize),
    row("perfect-dominating-set", Objective::Minimize),
    prow("d-dominating-set", Objective::Minimize),
    prow("induced-d-regular-subgraph", Objective::Maximize),
    prow("subgraph-min-degree", Objective::Minimize),
    prow("induced-subgraph-max-degree", Objective::Maximize),
];

const fn row(name: &'static str, objective: Objective) -> CatalogRow {
    CatalogRow {
        name,
        parameterized: false,
        default_param: 0,
        objective,
    }
}

const fn prow(name: &'static str, objective: Objective) -> CatalogRow {
    CatalogRow {
        name,
        parameterized: true,
        default_param: 2,
        objective,
    }
}

pub fn catalog() -> &'static [CatalogRow] {
    CATALOG
}

fn sigma_rho_of(name: &str, d: usize) -> Option<(SetSpec, SetSpec)> {
    use SetSpec as S;
    Some(match name {
        "independent-set" => (S::singleton(0), S::naturals()),
        "dominating-set" => (S::naturals(), S::positives()),
        "maximal-independent-set" => (S::singleton(0), S::positives()),
        "total-dominating-set" => (S::positives(), S::positives()),
        "strong-stable-set" => (S::singleton(0), S::up_to(1)),
        "perfect-code" => (S::singleton(0), S::singleton(1)),
        "total-nearly-perfect-set" => (S::up_to(1), S::up_to(1)),
        "weakly-perfect-dominating-set" => (S::up_to(1), S::singleton(1)),
        "total-perfect-dominating-set" => (S::singleton(1), S::singleton(1)),
        "induced-matching" => (S::singleton(1), S::naturals()),
        "dominating-induced-matching" => (S::singleton(1), S::positives()),
        "perfect-dominating-set" => (S::naturals(), S::singleton(1)),
        "d-dominating-set" => (S::naturals(), S::at_least(d)),
        "induced-d-regular-subgraph" => (S::singleton(d), S::naturals()),
        "subgraph-min-degree" => (S::at_least(d), S::naturals()),
        "induced-subgraph-max-degree" => (S::up_to(d), S::naturals()),
        _ => return None,
    })
}

/// Look up a catalog problem by name. Parameterized rows take `param`
/// (default d = 2); fixed rows reject one.
pub fn catalog_lookup(name: &str, param: Option<usize>) -> Result<Problem, CatalogError> {
    let Some(item) = CATALOG.iter().find(|e| e.name == name) else {
        return Err(CatalogError::Unknown {
            name: name.to_string(),
            available: CATALOG
                .iter()
                .map(|e| e.name)
                .collect::<Vec<_>>()
                .join(", "),
        });
    };
    let d = if item.parameterized {
        param.unwrap_or(item.default_param)
    } else {
        if param.is_some() {
            return Err(CatalogError::UnexpectedParam {
                name: name.to_string(),
            });
        }
        0
    };
    if item.parameterized && name == "d-dominating-set" && d < 1 {
        return Err(CatalogError::ParamOutOfRange {
            name: name.to_string(),
            min: 1,
            got: d,
        });
    }
    let (sigma, rho) = sigma_rho_of(name, d).unwrap();
    Ok(Problem {
        sigma,
        rho,
        objective: item.objective,
        name: Some(name.to_string()),
    })
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum MatrixParseError {
    #[error("line {line}: missing or malformed header, expected `lcvp <q> <r>`")]
    MalformedHeader { line: usize },
    #[error("line {line}: expected {q} set tokens, found {found}")]
    WrongRowLength { line: usize, q: usize, found: usize },
    #[error("line {line}: {source}")]
    BadToken {
        line: usize,
        source: SetSpecParseError,
    },
    #[error("expected {q} matrix rows, found {found}")]
    WrongRowCount { q: usize, found: usize },
    #[error("matrix must have at least one class")]
    EmptyMatrix,
    #[error("distance r must be >= 1")]
    ZeroDistance,
}

/// LCVP constraint matrix: q x q set entries D[i][j] plus the distance r.
/// A partition V_1..V_q is valid when every v in V_i has
/// |N^r(v) ∩ V_j| in D[i][j] for all j.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConstraintMatrix {
    q: usize,
    r: usize,
    entries: Vec<SetSpec>,
}

impl ConstraintMatrix {
    pub fn new(rows: Vec<Vec<SetSpec>>, r: usize) -> Result<ConstraintMatrix, MatrixParseError> {
        let q = rows.len();
        if q == 0 {
            return Err(MatrixParseError::EmptyMatrix);
        }
        if r == 0 {
            return Err(MatrixParseError::ZeroDistance);
        }
        let mut entries = Vec::with_capacity(q * q);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != q {
                return Err(MatrixParseError::WrongRowLength {
                    line: i + 2,
                    q,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(ConstraintMatrix { q, r, entries })
    }

    /// The two-class matrix [[sigma, N], [rho, N]] expressing a (sigma, rho)
    /// problem: class 1 is the solution set, class 2 the rest.
    pub fn embedding(sigma: SetSpec, rho: SetSpec, r: usize) -> ConstraintMatrix {
        ConstraintMatrix::new(
            vec![
                vec![sigma, SetSpec::naturals()],
                vec![rho, SetSpec::naturals()],
            ],
            r,
        )
        .unwrap()
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn entry(&self, i: usize, j: usize) -> &SetSpec {
        &self.entries[i * self.q + j]
    }

    pub fn d_value(&self) -> usize {
        self.entries.iter().map(|e| e.d_value()).max().unwrap()
    }

    /// Parse the matrix format: `lcvp <q> <r>` header, then q lines of q
    /// whitespace-separated set tokens. `#` comments and blank lines skipped.
    pub fn parse(text: &str) -> Result<ConstraintMatrix, MatrixParseError> {
        let mut header: Option<(usize, usize)> = None;
        let mut rows: Vec<Vec<SetSpec>> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            match header {
                None => {
                    let mut it = content.split_whitespace();
                    match (it.next(), it.next(), it.next(), it.next()) {
                        (Some("lcvp"), Some(q), Some(r), None) => {
                            let q = q
                                .parse()
                                .map_err(|_| MatrixParseError::MalformedHeader { line })?;
                            let r = r
                                .parse()
                                .map_err(|_| MatrixParseError::MalformedHeader { line })?;
                            header = Some((q, r));
                        }
                        _ => return Err(MatrixParseError::MalformedHeader { line }),
                    }
                }
                Some((q, _)) => {
                    let row = content
                        .split_whitespace()
                        .map(|t| {
                            t.parse::<SetSpec>()
                                .map_err(|source| MatrixParseError::BadToken { line, source })
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    if row.len() != q {
                        return Err(MatrixParseError::WrongRowLength {
                            line,
                            q,
                            found: row.len(),
                        });
                    }
                    rows.push(row);
                }
            }
        }
        let (q, r) = header.ok_or(MatrixParseError::MalformedHeader { line: 1 })?;
        if rows.len() != q {
            return Err(MatrixParseError::WrongRowCount { q, found: rows.len() });
        }
        ConstraintMatrix::new(rows, r)
    }

    pub fn write(&self) -> String {
        let mut out = format!("lcvp {} {}\n", self.q, self.r);
        for i in 0..self.q {
            let row: Vec<String> = (0..self.q).map(|j| self.entry(i, j).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}
