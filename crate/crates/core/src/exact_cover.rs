//! EXACT-3-COVER instances: a universe `{0, …, 3r-1}` and a collection of
//! 3-element subsets; the question is whether `r` of them partition the
//! universe.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawEtc")]
pub struct EtcInstance {
    r: usize,
    sets: Vec<[usize; 3]>,
}

#[derive(Deserialize)]
struct RawEtc {
    r: usize,
    sets: Vec<Vec<usize>>,
}

impl TryFrom<RawEtc> for EtcInstance {
    type Error = Error;

    fn try_from(raw: RawEtc) -> Result<Self> {
        let sets = raw
            .sets
            .iter()
            .enumerate()
            .map(|(j, s)| {
                <[usize; 3]>::try_from(s.as_slice()).map_err(|_| {
                    Error::Invalid(format!("set {j} has {} elements, expected 3", s.len()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        EtcInstance::new(raw.r, sets)
    }
}

impl EtcInstance {
    pub fn new(r: usize, sets: Vec<[usize; 3]>) -> Result<Self> {
        if r == 0 {
            return Err(Error::Invalid("r must be positive".into()));
        }
        for (j, s) in sets.iter().enumerate() {
            if s.iter().any(|&x| x >= 3 * r) {
                return Err(Error::Invalid(format!("set {j} {s:?} leaves the universe 0..{}", 3 * r)));
            }
            if s[0] == s[1] || s[0] == s[2] || s[1] == s[2] {
                return Err(Error::Invalid(format!("set {j} {s:?} repeats an element")));
            }
        }
        Ok(EtcInstance { r, sets })
    }

    /// Parses `{"r": int, "sets": [[int,int,int], ...]}`.
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({ "r": self.r, "sets": self.sets }).to_string()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of sets.
    pub fn s(&self) -> usize {
        self.sets.len()
    }

    pub fn universe_size(&self) -> usize {
        3 * self.r
    }

    pub fn sets(&self) -> &[[usize; 3]] {
        &self.sets
    }

    /// Whether `cover` names `r` distinct sets covering each element once.
    pub fn is_exact_cover(&self, cover: &[usize]) -> bool {
        if cover.len() != self.r {
            return false;
        }
        let mut hits = vec![0u8; self.universe_size()];
        for &j in cover {
            let Some(set) = self.sets.get(j) else {
                return false;
            };
            for &x in set {
                hits[x] += 1;
            }
        }
        hits.iter().all(|&h| h == 1)
    }
}

/// An exact cover as sorted set indices, or `None`.
///
/// Backtracks on the smallest uncovered element, trying the sets that
/// contain it in index order.
pub fn solve_etc(inst: &EtcInstance) -> Option<Vec<usize>> {
    let u = inst.universe_size();
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); u];
    for (j, s) in inst.sets().iter().enumerate() {
        for &x in s {
            containing[x].push(j);
        }
    }

    fn go(
        inst: &EtcInstance,
        containing: &[Vec<usize>],
        covered: &mut [bool],
        from: usize,
        chosen: &mut Vec<usize>,
    ) -> bool {
        let Some(x) = (from..covered.len()).find(|&x| !covered[x]) else {
            return true;
        };
        for &j in &containing[x] {
            let set = inst.sets()[j];
            if set.iter().any(|&y| covered[y]) {
                continue;
            }
            set.iter().for_each(|&y| covered[y] = true);
            chosen.push(j);
            if go(inst, containing, covered, x + 1, chosen) {
                return true;
            }
            chosen.pop();
            set.iter().for_each(|&y| covered[y] = false);
        }
        false
    }

    let mut covered = vec![false; u];
    let mut chosen = Vec::new();
    go(inst, &containing, &mut covered, 0, &mut chosen).then(|| {
        chosen.sort_unstable();
        chosen
    })
}
