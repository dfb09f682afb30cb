//! Verdicts, witnesses and index windows shared by the kernel sweeps and the
//! claim audit.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::audit::Regime;
use crate::block::{Bidegree, GradedElement};
use crate::operator::ProfileSpec;
use crate::scalar::Scalar;

pub const DEFAULT_WITNESS_CAP: usize = 100;

/// Finite box of bidegrees `[m_min, m_max] x [i_min, i_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "WindowRepr", into = "WindowRepr")]
pub struct Window {
    m_min: i64,
    m_max: i64,
    i_min: i64,
    i_max: i64,
}

#[derive(Serialize, Deserialize)]
struct WindowRepr {
    m: [i64; 2],
    i: [i64; 2],
}

impl TryFrom<WindowRepr> for Window {
    type Error = String;
    fn try_from(r: WindowRepr) -> Result<Self, String> {
        Window::new(r.m[0], r.m[1], r.i[0], r.i[1])
    }
}

impl From<Window> for WindowRepr {
    fn from(w: Window) -> Self {
        WindowRepr {
            m: [w.m_min, w.m_max],
            i: [w.i_min, w.i_max],
        }
    }
}

impl Window {
    pub fn new(m_min: i64, m_max: i64, i_min: i64, i_max: i64) -> Result<Self, String> {
        if m_min > m_max || i_min > i_max {
            return Err(format!(
                "empty window m=[{m_min},{m_max}] i=[{i_min},{i_max}]"
            ));
        }
        Ok(Window {
            m_min,
            m_max,
            i_min,
            i_max,
        })
    }

    /// `|m|, |i| <= n`.
    pub fn square(n: i64) -> Self {
        let n = n.abs();
        Window {
            m_min: -n,
            m_max: n,
            i_min: -n,
            i_max: n,
        }
    }

    pub fn m_range(&self) -> std::ops::RangeInclusive<i64> {
        self.m_min..=self.m_max
    }

    pub fn i_range(&self) -> std::ops::RangeInclusive<i64> {
        self.i_min..=self.i_max
    }

    pub fn contains(&self, at: Bidegree) -> bool {
        self.m_range().contains(&at.m) && self.i_range().contains(&at.i)
    }

    /// Basis bidegrees in lexicographic order.
    pub fn basis(&self) -> Vec<Bidegree> {
        self.m_range()
            .flat_map(|m| self.i_range().map(move |i| Bidegree::new(m, i)))
            .collect()
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "m in [{}, {}], i in [{}, {}]",
            self.m_min, self.m_max, self.i_min, self.i_max
        )
    }
}

/// Index set a verdict was evaluated on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Scope {
    /// Ordered basis pairs (or triples) of a bidegree box.
    Grid { window: Window, arity: u8 },
    /// Pairs `(i, j)` with both indices in `[lo, hi]`.
    Index { lo: i64, hi: i64 },
    /// Explicit index tuples.
    Points { points: Vec<Vec<i64>> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    HoldsOnWindow,
    Fails,
    /// Aggregate whose parts disagree.
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Holds,
    Fails,
}

/// Concrete counterexample: nonzero residual at the given inputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Element {
        inputs: Vec<Bidegree>,
        residual: GradedElement,
    },
    Scalar {
        indices: Vec<i64>,
        value: Scalar,
    },
}

impl Witness {
    pub fn is_nonzero(&self) -> bool {
        match self {
            Witness::Element { residual, .. } => !residual.is_zero(),
            Witness::Scalar { value, .. } => !value.is_zero(),
        }
    }
}

/// Parameters a verdict was computed under.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictConfig {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<Scalar>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Scalar>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<Scalar>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kprime: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<ProfileSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regime: Option<Regime>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub claim: String,
    pub config: VerdictConfig,
    #[serde(rename = "window")]
    pub scope: Scope,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paper_expects: Option<Expectation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agrees_with_paper: Option<bool>,
    pub witnesses: Vec<Witness>,
    pub truncated: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Verdict {
    /// Status follows from the witness list: empty means holds on the scope.
    pub fn from_witnesses(
        claim: impl Into<String>,
        config: VerdictConfig,
        scope: Scope,
        witnesses: Vec<Witness>,
        truncated: bool,
    ) -> Self {
        let status = if witnesses.is_empty() {
            Status::HoldsOnWindow
        } else {
            Status::Fails
        };
        Verdict {
            claim: claim.into(),
            config,
            scope,
            status,
            paper_expects: None,
            agrees_with_paper: None,
            witnesses,
            truncated,
            notes: Vec::new(),
        }
    }

    pub fn expecting(mut self, exp: Option<Expectation>) -> Self {
        self.paper_expects = exp;
        self.agrees_with_paper = exp.map(|e| match (e, self.status) {
            (Expectation::Holds, Status::HoldsOnWindow) => true,
            (Expectation::Fails, Status::Fails) => true,
            _ => false,
        });
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn holds(&self) -> bool {
        self.status == Status::HoldsOnWindow
    }

    /// Merges verdicts into one; `Mixed` when some parts hold and some fail.
    pub fn aggregate(
        claim: impl Into<String>,
        config: VerdictConfig,
        scope: Scope,
        parts: &[Verdict],
        cap: usize,
    ) -> Verdict {
        let mut witnesses = Vec::new();
        let mut truncated = false;
        for p in parts {
            for w in &p.witnesses {
                if witnesses.len() < cap {
                    witnesses.push(w.clone());
                } else {
                    truncated = true;
                }
            }
            truncated |= p.truncated;
        }
        let any_hold = parts.iter().any(Verdict::holds);
        let any_fail = parts.iter().any(|p| !p.holds());
        let status = match (any_hold, any_fail) {
            (_, false) => Status::HoldsOnWindow,
            (false, true) => Status::Fails,
            (true, true) => Status::Mixed,
        };
        Verdict {
            claim: claim.into(),
            config,
            scope,
            status,
            paper_expects: None,
            agrees_with_paper: None,
            witnesses,
            truncated,
            notes: Vec::new(),
        }
    }
}

/// Keeps the first `cap` items of an ordered stream and reports whether any
/// were dropped.
pub fn cap_witnesses<I: IntoIterator<Item = Witness>>(iter: I, cap: usize) -> (Vec<Witness>, bool) {
    let mut out = Vec::new();
    let mut truncated = false;
    for w in iter {
        if out.len() < cap {
            out.push(w);
        } else {
            truncated = true;
            break;
        }
    }
    (out, truncated)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_validation_and_basis_order() {
        assert!(Window::new(1, 0, 0, 0).is_err());
        let w = Window::new(-1, 0, 2, 3).unwrap();
        assert_eq!(
            w.basis(),
            vec![
                Bidegree::new(-1, 2),
                Bidegree::new(-1, 3),
                Bidegree::new(0, 2),
                Bidegree::new(0, 3)
            ]
        );
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, r#"{"m":[-1,0],"i":[2,3]}"#);
        assert!(serde_json::from_str::<Window>(r#"{"m":[1,0],"i":[0,0]}"#).is_err());
    }

    #[test]
    fn status_follows_witnesses() {
        let scope = Scope::Index { lo: 0, hi: 1 };
        let v =
            Verdict::from_witnesses("X", VerdictConfig::default(), scope.clone(), vec![], false);
        assert_eq!(v.status, Status::HoldsOnWindow);
        let w = Witness::Scalar {
            indices: vec![1, 0],
            value: Scalar::int(2),
        };
        let f =
            Verdict::from_witnesses("X", VerdictConfig::default(), scope.clone(), vec![w], false)
                .expecting(Some(Expectation::Holds));
        assert_eq!(f.status, Status::Fails);
        assert_eq!(f.agrees_with_paper, Some(false));
        let agg = Verdict::aggregate("X", VerdictConfig::default(), scope, &[v, f], 10);
        assert_eq!(agg.status, Status::Mixed);
        assert_eq!(agg.witnesses.len(), 1);
    }

    #[test]
    fn capping() {
        let ws = (0..5).map(|n| Witness::Scalar {
            indices: vec![n],
            value: Scalar::one(),
        });
        let (kept, truncated) = cap_witnesses(ws, 3);
        assert_eq!(kept.len(), 3);
        assert!(truncated);
    }
}
