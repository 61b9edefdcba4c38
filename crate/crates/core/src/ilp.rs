//! Six-indicator binary ILP model for the minimum-weight 4RDF, written in LP
//! text format.
//!
//! Vertex `u` gets indicators `a_u … f_u` for labels 0 … 5. Each vertex has a
//! coverage row and a uniqueness row; the objective is the labeling weight.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::labeling::Labeling;

pub const PREFIXES: [char; 6] = ['a', 'b', 'c', 'd', 'e', 'f'];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Ge,
    Le,
    Eq,
}

impl Sense {
    fn symbol(self) -> &'static str {
        match self {
            Sense::Ge => ">=",
            Sense::Le => "<=",
            Sense::Eq => "=",
        }
    }

    fn holds(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Sense::Ge => lhs >= rhs,
            Sense::Le => lhs <= rhs,
            Sense::Eq => lhs == rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub name: String,
    /// `(variable index, coefficient)`, nonzero coefficients only.
    pub terms: Vec<(usize, i64)>,
    pub sense: Sense,
    pub rhs: i64,
}

/// How the one-label-per-vertex row is stated.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Uniqueness {
    /// `a_u + … + f_u = 1`.
    #[default]
    Exact,
    /// `a_u + … + f_u ≤ 1`. An all-zero vertex then gets one unit of slack
    /// in its coverage row, so the optimum can drop below the true minimum.
    AtMostOne,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IlpModel {
    pub var_names: Vec<String>,
    pub objective: Vec<(usize, i64)>,
    pub rows: Vec<Row>,
}

/// Index of indicator `label` for vertex `u`.
pub fn var_index(u: usize, label: u8) -> usize {
    6 * u + usize::from(label)
}

/// Builds the model.
///
/// The coverage row at `u`,
/// `(1 - a_u - b_u - c_u - d_u) + 3e_u + 4f_u + Σ_{N[u]} w ≥ 4 + Σ_{N(u)} nz`
/// with `w = b + 2c + 3d + 4e + 5f` and `nz = b + c + d + e + f`, is moved to
/// `Σ coef · var ≥ 3` with like terms combined.
pub fn build_model(g: &Graph, uniqueness: Uniqueness) -> IlpModel {
    let n = g.n();
    let var_names = (0..n).flat_map(|u| PREFIXES.iter().map(move |p| format!("{p}_{u}"))).collect();
    let objective = (0..n).flat_map(|u| (1..=5u8).map(move |l| (var_index(u, l), i64::from(l)))).collect();

    // own: -1 (from the constant term) + weight, plus the 3e/4f slack
    const OWN: [i64; 6] = [-1, 0, 1, 2, 7, 9];
    // neighbor: weight minus the nonzero indicator
    const NEIGHBOR: [i64; 6] = [0, 0, 1, 2, 3, 4];

    let mut rows = Vec::with_capacity(2 * n);
    for u in g.vertices() {
        let mut terms = Vec::new();
        for v in g.closed_neighbors(u) {
            let coefs = if v == u { &OWN } else { &NEIGHBOR };
            for l in 0..6u8 {
                let c = coefs[usize::from(l)];
                if c != 0 {
                    terms.push((var_index(v, l), c));
                }
            }
        }
        rows.push(Row { name: format!("cov_{u}"), terms, sense: Sense::Ge, rhs: 3 });
    }
    for u in g.vertices() {
        rows.push(Row {
            name: format!("uniq_{u}"),
            terms: (0..6).map(|l| (var_index(u, l), 1)).collect(),
            sense: match uniqueness {
                Uniqueness::Exact => Sense::Eq,
                Uniqueness::AtMostOne => Sense::Le,
            },
            rhs: 1,
        });
    }
    IlpModel { var_names, objective, rows }
}

impl IlpModel {
    pub fn num_vars(&self) -> usize {
        self.var_names.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn objective_value(&self, asg: &[bool]) -> i64 {
        self.objective.iter().map(|&(i, c)| if asg[i] { c } else { 0 }).sum()
    }

    pub fn row_holds(&self, row: &Row, asg: &[bool]) -> bool {
        let lhs = row.terms.iter().map(|&(i, c)| if asg[i] { c } else { 0 }).sum();
        row.sense.holds(lhs, row.rhs)
    }

    /// Whether the binary assignment satisfies every row.
    pub fn is_feasible(&self, asg: &[bool]) -> bool {
        asg.len() == self.num_vars() && self.rows.iter().all(|r| self.row_holds(r, asg))
    }

    /// LP text format, wrapped so no line gets long.
    pub fn to_lp(&self) -> String {
        fn expr(out: &mut String, names: &[String], terms: &[(usize, i64)]) {
            for (k, &(i, c)) in terms.iter().enumerate() {
                if k > 0 && k % 8 == 0 {
                    out.push_str("\n   ");
                }
                let sign = if c < 0 { "-" } else { "+" };
                if k == 0 && c > 0 {
                    out.push(' ');
                } else {
                    let _ = write!(out, " {sign} ");
                }
                if c.abs() != 1 {
                    let _ = write!(out, "{} ", c.abs());
                }
                out.push_str(&names[i]);
            }
        }

        let mut out = String::new();
        let _ = writeln!(
            out,
            "\\ quadruple Roman domination: {} variables, {} constraints",
            self.num_vars(),
            self.num_rows()
        );
        out.push_str("Minimize\n obj:");
        expr(&mut out, &self.var_names, &self.objective);
        out.push_str("\nSubject To\n");
        for row in &self.rows {
            let _ = write!(out, " {}:", row.name);
            expr(&mut out, &self.var_names, &row.terms);
            let _ = writeln!(out, " {} {}", row.sense.symbol(), row.rhs);
        }
        out.push_str("Binary\n");
        for chunk in self.var_names.chunks(12) {
            let _ = writeln!(out, " {}", chunk.join(" "));
        }
        out.push_str("End\n");
        out
    }
}

/// Minimal reader for the LP subset that [`IlpModel::to_lp`] writes:
/// whitespace-separated tokens, one objective, named rows, a `Binary`
/// section, `\` comments.
pub fn parse_lp(text: &str) -> Result<IlpModel> {
    #[derive(PartialEq)]
    enum Section {
        Start,
        Objective,
        Rows,
        Binary,
        Done,
    }
    let mut section = Section::Start;
    let mut obj_toks: Vec<String> = Vec::new();
    let mut row_toks: Vec<String> = Vec::new();
    let mut var_names: Vec<String> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('\\').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let lower = line.to_ascii_lowercase();
        let next = match lower.as_str() {
            "minimize" | "minimise" | "min" => Some(Section::Objective),
            "subject to" | "st" | "s.t." => Some(Section::Rows),
            "binary" | "binaries" | "bin" => Some(Section::Binary),
            "end" => Some(Section::Done),
            _ => None,
        };
        if let Some(s) = next {
            section = s;
            continue;
        }
        let toks = line.split_whitespace().map(str::to_string);
        match section {
            Section::Objective => obj_toks.extend(toks),
            Section::Rows => row_toks.extend(toks),
            Section::Binary => var_names.extend(toks),
            Section::Start | Section::Done => {
                return Err(Error::Parse { line: lineno + 1, msg: format!("unexpected `{line}`") })
            }
        }
    }
    if section != Section::Done {
        return Err(Error::Parse { line: text.lines().count(), msg: "missing `End`".into() });
    }
    let index = |name: &str| {
        var_names
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::Parse { line: 0, msg: format!("variable `{name}` not declared binary") })
    };
    let bad = |msg: String| Error::Parse { line: 0, msg };

    // expression: [label:] ([+|-] [coef] name)*
    let parse_expr = |toks: &[String]| -> Result<Vec<(usize, i64)>> {
        let mut terms = Vec::new();
        let mut sign = 1;
        let mut coef: Option<i64> = None;
        for t in toks {
            match t.as_str() {
                "+" => sign = 1,
                "-" => sign = -1,
                _ => {
                    if let Ok(c) = t.parse::<i64>() {
                        coef = Some(c);
                    } else {
                        terms.push((index(t)?, sign * coef.take().unwrap_or(1)));
                        sign = 1;
                    }
                }
            }
        }
        Ok(terms)
    };

    let obj_body = match obj_toks.first() {
        Some(t) if t.ends_with(':') => &obj_toks[1..],
        _ => &obj_toks[..],
    };
    let objective = parse_expr(obj_body)?;

    let mut rows = Vec::new();
    let mut i = 0;
    while i < row_toks.len() {
        let name = row_toks[i]
            .strip_suffix(':')
            .ok_or_else(|| bad(format!("expected a row name, got `{}`", row_toks[i])))?
            .to_string();
        let start = i + 1;
        let op = (start..row_toks.len())
            .find(|&k| matches!(row_toks[k].as_str(), ">=" | "<=" | "=" | "=>" | "=<"))
            .ok_or_else(|| bad(format!("row `{name}` has no comparison")))?;
        let sense = match row_toks[op].as_str() {
            ">=" | "=>" => Sense::Ge,
            "<=" | "=<" => Sense::Le,
            _ => Sense::Eq,
        };
        let rhs = row_toks
            .get(op + 1)
            .and_then(|t| t.parse::<i64>().ok())
            .ok_or_else(|| bad(format!("row `{name}` lacks an integer right-hand side")))?;
        rows.push(Row { name, terms: parse_expr(&row_toks[start..op])?, sense, rhs });
        i = op + 2;
    }
    Ok(IlpModel { var_names, objective, rows })
}

/// One indicator per vertex set to 1.
pub fn encode_labeling(f: &Labeling) -> Vec<bool> {
    let mut asg = vec![false; 6 * f.len()];
    for (u, &l) in f.values().iter().enumerate() {
        asg[var_index(u, l)] = true;
    }
    asg
}

/// Reads labels back from indicators; an all-zero vertex reads as label 0.
pub fn decode_assignment(g: &Graph, asg: &[bool]) -> Result<Labeling> {
    if asg.len() != 6 * g.n() {
        return Err(Error::Invalid(format!("assignment has {} entries, expected {}", asg.len(), 6 * g.n())));
    }
    let labels = asg
        .chunks(6)
        .enumerate()
        .map(|(u, ind)| match ind.iter().filter(|&&b| b).count() {
            0 => Ok(0),
            1 => Ok(ind.iter().position(|&b| b).unwrap() as u8),
            k => Err(Error::Invalid(format!("vertex {u} has {k} indicators set"))),
        })
        .collect::<Result<Vec<u8>>>()?;
    Labeling::new(labels)
}
