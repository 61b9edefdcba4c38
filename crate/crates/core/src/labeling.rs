//! Vertex labelings with values in `0..=5` and the 4RDF condition.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub const MAX_LABEL: u8 = 5;

/// Labels at or above this value are exempt from the neighborhood condition.
pub const EXEMPT_FROM: u8 = 4;

/// A labeling `V → {0,…,5}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct Labeling(Vec<u8>);

impl Labeling {
    pub fn new(values: Vec<u8>) -> Result<Self> {
        if let Some((vertex, &label)) = values.iter().enumerate().find(|(_, &l)| l > MAX_LABEL) {
            return Err(Error::LabelOutOfRange { vertex, label });
        }
        Ok(Labeling(values))
    }

    pub fn zeros(n: usize) -> Self {
        Labeling(vec![0; n])
    }

    pub fn constant(n: usize, label: u8) -> Self {
        assert!(label <= MAX_LABEL);
        Labeling(vec![label; n])
    }

    /// Label 5 on `support`, 0 elsewhere.
    pub fn fives_on(n: usize, support: &[Vertex]) -> Self {
        let mut l = Labeling::zeros(n);
        for &v in support {
            l.0[v] = 5;
        }
        l
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[u8] {
        &self.0
    }

    pub fn get(&self, v: Vertex) -> u8 {
        self.0[v]
    }

    pub fn set(&mut self, v: Vertex, label: u8) {
        assert!(label <= MAX_LABEL, "label {label} out of range");
        self.0[v] = label;
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&l| u64::from(l)).sum()
    }

    /// The partition `(V₀,…,V₅)` with `Vᵢ = {v : f(v) = i}`.
    pub fn as_six_tuple(&self) -> [Vec<Vertex>; 6] {
        let mut parts: [Vec<Vertex>; 6] = Default::default();
        for (v, &l) in self.0.iter().enumerate() {
            parts[usize::from(l)].push(v);
        }
        parts
    }

    /// Inverse of [`Labeling::as_six_tuple`]; the parts must partition `0..n`.
    pub fn from_six_tuple(n: usize, parts: &[Vec<Vertex>; 6]) -> Result<Self> {
        let mut vals: Vec<Option<u8>> = vec![None; n];
        for (label, part) in parts.iter().enumerate() {
            for &v in part {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if vals[v].replace(label as u8).is_some() {
                    return Err(Error::Invalid(format!("vertex {v} appears in two parts")));
                }
            }
        }
        vals.into_iter()
            .enumerate()
            .map(|(v, l)| l.ok_or_else(|| Error::Invalid(format!("vertex {v} is in no part"))))
            .collect::<Result<Vec<_>>>()
            .map(Labeling)
    }

    fn check_len(&self, g: &Graph) -> Result<()> {
        if self.len() != g.n() {
            return Err(Error::LengthMismatch { labels: self.len(), n: g.n() });
        }
        Ok(())
    }

    /// Parses a labeling file: either one line of `n` labels, or one
    /// `vertex label` pair per line covering every vertex exactly once.
    ///
    /// With `expected_n` given, a single line of two tokens is read as a pair
    /// when `expected_n == 1`.
    pub fn parse(text: &str, expected_n: Option<usize>) -> Result<Self> {
        let lines: Vec<(usize, Vec<&str>)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").split_whitespace().collect()))
            .filter(|(_, t): &(usize, Vec<&str>)| !t.is_empty())
            .collect();
        let num = |line: usize, tok: &str| -> Result<usize> {
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line,
                msg: format!("`{tok}` is not a non-negative integer"),
            })
        };
        let label = |line: usize, tok: &str| -> Result<u8> {
            let v = num(line, tok)?;
            u8::try_from(v).ok().filter(|&l| l <= MAX_LABEL).ok_or_else(|| Error::Parse {
                line,
                msg: format!("label {v} outside 0..=5"),
            })
        };

        let single_line =
            lines.len() == 1 && !(expected_n == Some(1) && lines[0].1.len() == 2);
        let values = if lines.is_empty() {
            Vec::new()
        } else if single_line {
            let (line, toks) = &lines[0];
            toks.iter().map(|t| label(*line, t)).collect::<Result<Vec<_>>>()?
        } else {
            let n = expected_n.unwrap_or(lines.len());
            let mut vals: Vec<Option<u8>> = vec![None; n];
            for (line, toks) in &lines {
                if toks.len() != 2 {
                    return Err(Error::Parse {
                        line: *line,
                        msg: "expected `vertex label`".into(),
                    });
                }
                let v = num(*line, toks[0])?;
                if v >= n {
                    return Err(Error::Parse {
                        line: *line,
                        msg: format!("vertex {v} out of range for {n} vertices"),
                    });
                }
                if vals[v].replace(label(*line, toks[1])?).is_some() {
                    return Err(Error::Parse { line: *line, msg: format!("vertex {v} labeled twice") });
                }
            }
            vals.into_iter()
                .enumerate()
                .map(|(v, l)| {
                    l.ok_or_else(|| Error::Parse { line: 0, msg: format!("vertex {v} has no label") })
                })
                .collect::<Result<Vec<_>>>()?
        };
        if let Some(n) = expected_n {
            if values.len() != n {
                return Err(Error::LengthMismatch { labels: values.len(), n });
            }
        }
        Ok(Labeling(values))
    }

    /// Single-line serialization.
    pub fn to_line(&self) -> String {
        let mut s = self.0.iter().map(u8::to_string).collect::<Vec<_>>().join(" ");
        s.push('\n');
        s
    }
}

impl TryFrom<Vec<u8>> for Labeling {
    type Error = Error;

    fn try_from(v: Vec<u8>) -> Result<Self> {
        Labeling::new(v)
    }
}

impl From<Labeling> for Vec<u8> {
    fn from(l: Labeling) -> Self {
        l.0
    }
}

impl fmt::Debug for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Labeling{:?}", self.0)
    }
}

/// One failing vertex: `lhs = f(N[x])` fell short of `rhs = |{y ∈ N(x) : f(y) ≠ 0}| + 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub vertex: Vertex,
    pub lhs: u64,
    pub rhs: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub valid: bool,
    pub weight: u64,
    pub violations: Vec<Violation>,
}

/// Both sides of the condition at `x`: `(f(N[x]), nonzero-neighbor count + 4)`.
pub fn condition_sides(g: &Graph, f: &Labeling, x: Vertex) -> (u64, u64) {
    let mut lhs = u64::from(f.get(x));
    let mut rhs = 4;
    for &y in g.neighbors(x) {
        let l = f.get(y);
        lhs += u64::from(l);
        rhs += u64::from(l != 0);
    }
    (lhs, rhs)
}

/// Checks the 4RDF condition at every vertex and reports all violations.
pub fn verify(g: &Graph, f: &Labeling) -> Result<VerificationReport> {
    f.check_len(g)?;
    let violations: Vec<Violation> = g
        .vertices()
        .filter(|&x| f.get(x) < EXEMPT_FROM)
        .filter_map(|x| {
            let (lhs, rhs) = condition_sides(g, f, x);
            (lhs < rhs).then_some(Violation { vertex: x, lhs, rhs })
        })
        .collect();
    Ok(VerificationReport { valid: violations.is_empty(), weight: f.weight(), violations })
}

/// Shorthand for `verify(g, f)?.valid`.
pub fn is_valid(g: &Graph, f: &Labeling) -> Result<bool> {
    verify(g, f).map(|r| r.valid)
}

/// How much the condition at `v` falls short; 0 for exempt or satisfied vertices.
pub fn deficiency(g: &Graph, f: &Labeling, v: Vertex) -> Result<u64> {
    f.check_len(g)?;
    if v >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    if f.get(v) >= EXEMPT_FROM {
        return Ok(0);
    }
    let (lhs, rhs) = condition_sides(g, f, v);
    Ok(rhs.saturating_sub(lhs))
}
