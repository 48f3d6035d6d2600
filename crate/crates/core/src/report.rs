//! Outcomes of identity checks.

use std::fmt;

use serde::Serialize;

use crate::exactcore::MultiPoly;
use crate::series::{Series1, Series2};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Holds,
    /// The first coefficient (or entry) at which the two sides disagree.
    Fails {
        at: String,
        left: String,
        right: String,
    },
    /// Informational result that is never counted as a failure.
    Note { text: String },
}

/// One named identity check evaluated at a stated truncation order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub check: String,
    pub order: usize,
    pub outcome: Outcome,
}

impl Verification {
    pub fn holds(check: impl Into<String>, order: usize) -> Self {
        Verification {
            check: check.into(),
            order,
            outcome: Outcome::Holds,
        }
    }

    pub fn fails(
        check: impl Into<String>,
        order: usize,
        at: impl Into<String>,
        left: impl Into<String>,
        right: impl Into<String>,
    ) -> Self {
        Verification {
            check: check.into(),
            order,
            outcome: Outcome::Fails {
                at: at.into(),
                left: left.into(),
                right: right.into(),
            },
        }
    }

    pub fn note(check: impl Into<String>, order: usize, text: impl Into<String>) -> Self {
        Verification {
            check: check.into(),
            order,
            outcome: Outcome::Note { text: text.into() },
        }
    }

    /// Compares two series coefficientwise up to `order`.
    pub fn series_eq(check: impl Into<String>, order: usize, left: &Series1, right: &Series1) -> Self {
        let left = left.truncate(order.min(left.order()));
        let right = right.truncate(order.min(right.order()));
        match left.first_difference(&right) {
            None => Self::holds(check, order),
            Some((k, l, r)) => Self::fails(check, order, format!("x^{k}"), l.to_text(), r.to_text()),
        }
    }

    /// Asserts that a series vanishes through `order`.
    pub fn series_zero(check: impl Into<String>, order: usize, s: &Series1) -> Self {
        let s = s.truncate(order.min(s.order()));
        match s.valuation() {
            None => Self::holds(check, order),
            Some(k) => Self::fails(check, order, format!("x^{k}"), s.coeff(k).to_text(), "0"),
        }
    }

    pub fn series2_eq(check: impl Into<String>, order: usize, left: &Series2, right: &Series2) -> Self {
        let left = left.truncate(order.min(left.order()));
        let right = right.truncate(order.min(right.order()));
        match left.first_difference(&right) {
            None => Self::holds(check, order),
            Some((i, j, l, r)) => Self::fails(
                check,
                order,
                format!("u^{i} v^{j}"),
                l.to_text(),
                r.to_text(),
            ),
        }
    }

    pub fn poly_eq(check: impl Into<String>, left: &MultiPoly, right: &MultiPoly) -> Self {
        if left == right {
            Self::holds(check, 0)
        } else {
            let diff = left - right;
            let at = diff
                .terms()
                .next_back()
                .map(|(m, _)| format!("{:?}", m.exponents()))
                .unwrap_or_default();
            Self::fails(check, 0, at, left.to_text(), right.to_text())
        }
    }

    pub fn is_ok(&self) -> bool {
        !matches!(self.outcome, Outcome::Fails { .. })
    }

    pub fn is_failure(&self) -> bool {
        !self.is_ok()
    }
}

impl fmt::Display for Verification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Holds => write!(f, "{} (order {}): holds", self.check, self.order),
            Outcome::Fails { at, left, right } => write!(
                f,
                "{} (order {}): differs at {at}: {left} != {right}",
                self.check, self.order
            ),
            Outcome::Note { text } => write!(f, "{} (order {}): {text}", self.check, self.order),
        }
    }
}

/// A group of checks belonging to one operation.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Verification>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, v: Verification) {
        self.checks.push(v);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn holds(&self) -> bool {
        self.checks.iter().all(Verification::is_ok)
    }

    pub fn first_failure(&self) -> Option<&Verification> {
        self.checks.iter().find(|v| v.is_failure())
    }
}

impl From<Verification> for Report {
    fn from(v: Verification) -> Self {
        Report { checks: vec![v] }
    }
}

impl FromIterator<Verification> for Report {
    fn from_iter<I: IntoIterator<Item = Verification>>(iter: I) -> Self {
        Report {
            checks: iter.into_iter().collect(),
        }
    }
}
