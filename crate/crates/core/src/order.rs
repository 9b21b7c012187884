use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// Sort key of a term: lexicographic comparison of keys agrees with the term order.
/// Every key is linear in the exponent vector, so `key(m * t) = key(m) + key(t)`.
pub(crate) type Key = SmallVec<[i64; 8]>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderKind {
    Grevlex,
    Lex,
    GradedLex,
}

/// A monomial order together with a variable permutation.
///
/// `permutation[0]` is the index of the most significant variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermOrder {
    kind: OrderKind,
    permutation: Vec<usize>,
}

impl TermOrder {
    pub fn new(kind: OrderKind, arity: usize) -> Self {
        TermOrder {
            kind,
            permutation: (0..arity).collect(),
        }
    }

    pub fn grevlex(arity: usize) -> Self {
        Self::new(OrderKind::Grevlex, arity)
    }

    pub fn lex(arity: usize) -> Self {
        Self::new(OrderKind::Lex, arity)
    }

    pub fn with_permutation(kind: OrderKind, permutation: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; permutation.len()];
        for &i in &permutation {
            if i >= seen.len() || seen[i] {
                return Err(Error::Invalid(format!(
                    "variable permutation {permutation:?} is not a bijection"
                )));
            }
            seen[i] = true;
        }
        Ok(TermOrder { kind, permutation })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn arity(&self) -> usize {
        self.permutation.len()
    }

    pub(crate) fn key(&self, weights: &[u32], mono: &Monomial) -> Key {
        let e = mono.exponents();
        let mut key = Key::new();
        match self.kind {
            OrderKind::Grevlex => {
                key.push(mono.weighted_degree(weights) as i64);
                key.extend(self.permutation.iter().rev().map(|&i| -(e[i] as i64)));
            }
            OrderKind::Lex => key.extend(self.permutation.iter().map(|&i| e[i] as i64)),
            OrderKind::GradedLex => {
                key.push(mono.weighted_degree(weights) as i64);
                key.extend(self.permutation.iter().map(|&i| e[i] as i64));
            }
        }
        key
    }

    pub fn compare(&self, weights: &[u32], a: &Monomial, b: &Monomial) -> Ordering {
        self.key(weights, a).cmp(&self.key(weights, b))
    }
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            OrderKind::Grevlex => "grevlex",
            OrderKind::Lex => "lex",
            OrderKind::GradedLex => "graded-lex",
        };
        write!(f, "{name}{:?}", self.permutation)
    }
}
