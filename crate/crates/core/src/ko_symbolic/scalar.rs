//! The coefficient ring KO* = ℤ[e, α, β, β⁻¹]/(2e, e³, eα, α² − 4β).

use std::collections::BTreeMap;
use std::fmt;

use crate::ku_model::{checked_add, checked_mul};

/// Additive basis of KO*: `βᵗ`, `αβᵗ`, `eβᵗ`, `e²βᵗ` for t ∈ ℤ.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ScalarToken {
    Beta(i64),
    AlphaBeta(i64),
    EBeta(i64),
    E2Beta(i64),
}

impl ScalarToken {
    /// Cohomological degree (β ∈ KO⁻⁸, α ∈ KO⁻⁴, e ∈ KO⁻¹).
    pub fn degree(self) -> i64 {
        match self {
            ScalarToken::Beta(t) => -8 * t,
            ScalarToken::AlphaBeta(t) => -8 * t - 4,
            ScalarToken::EBeta(t) => -8 * t - 1,
            ScalarToken::E2Beta(t) => -8 * t - 2,
        }
    }

    /// True for the 2-torsion tokens `eβᵗ`, `e²βᵗ`.
    pub fn is_torsion(self) -> bool {
        matches!(self, ScalarToken::EBeta(_) | ScalarToken::E2Beta(_))
    }

    pub fn beta_power(self) -> i64 {
        match self {
            ScalarToken::Beta(t) | ScalarToken::AlphaBeta(t) | ScalarToken::EBeta(t) | ScalarToken::E2Beta(t) => t,
        }
    }

    /// Product of two basis tokens as `(multiplier, token)`, or `None` when
    /// it vanishes.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: ScalarToken) -> Option<(i128, ScalarToken)> {
        use ScalarToken::*;
        let (a, b) = if self <= other { (self, other) } else { (other, self) };
        match (a, b) {
            (Beta(x), Beta(y)) => Some((1, Beta(x + y))),
            (Beta(x), AlphaBeta(y)) => Some((1, AlphaBeta(x + y))),
            (Beta(x), EBeta(y)) => Some((1, EBeta(x + y))),
            (Beta(x), E2Beta(y)) => Some((1, E2Beta(x + y))),
            // α² = 4β
            (AlphaBeta(x), AlphaBeta(y)) => Some((4, Beta(x + y + 1))),
            (EBeta(x), EBeta(y)) => Some((1, E2Beta(x + y))),
            // eα = 0, e³ = 0
            _ => None,
        }
    }
}

/// A (not necessarily homogeneous) element of KO*.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct KoScalar {
    terms: BTreeMap<ScalarToken, i128>,
}

impl KoScalar {
    pub fn zero() -> Self {
        KoScalar::default()
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn integer(n: i128) -> Self {
        Self::token(ScalarToken::Beta(0), n)
    }

    pub fn token(t: ScalarToken, c: i128) -> Self {
        let mut s = KoScalar::zero();
        s.add_term(t, c);
        s
    }

    pub fn alpha() -> Self {
        Self::token(ScalarToken::AlphaBeta(0), 1)
    }

    pub fn beta(t: i64) -> Self {
        Self::token(ScalarToken::Beta(t), 1)
    }

    pub fn e() -> Self {
        Self::token(ScalarToken::EBeta(0), 1)
    }

    /// The realification `r(vˢ)`: 0 for odd s, `αβ^{(s−2)/4}` for s ≡ 2 (mod 4)
    /// and `2β^{s/4}` for s ≡ 0 (mod 4).
    pub fn realified_bott_power(s: i64) -> Self {
        match s.rem_euclid(4) {
            0 => Self::token(ScalarToken::Beta(s.div_euclid(4)), 2),
            2 => Self::token(ScalarToken::AlphaBeta((s - 2).div_euclid(4)), 1),
            _ => Self::zero(),
        }
    }

    pub(crate) fn add_term(&mut self, t: ScalarToken, c: i128) {
        let slot = self.terms.entry(t).or_insert(0);
        *slot = checked_add(*slot, c);
        if t.is_torsion() {
            *slot = slot.rem_euclid(2);
        }
        if *slot == 0 {
            self.terms.remove(&t);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ScalarToken, &i128)> {
        self.terms.iter()
    }

    pub fn coeff(&self, t: ScalarToken) -> i128 {
        self.terms.get(&t).copied().unwrap_or(0)
    }

    /// The common degree of all terms; `None` for zero or an inhomogeneous
    /// scalar.
    pub fn degree(&self) -> Option<i64> {
        let mut degs = self.terms.keys().map(|t| t.degree());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn add(&self, other: &KoScalar) -> KoScalar {
        let mut out = self.clone();
        for (&t, &c) in &other.terms {
            out.add_term(t, c);
        }
        out
    }

    pub fn neg(&self) -> KoScalar {
        self.scale(-1)
    }

    pub fn scale(&self, k: i128) -> KoScalar {
        let mut out = KoScalar::zero();
        for (&t, &c) in &self.terms {
            out.add_term(t, checked_mul(c, k));
        }
        out
    }

    pub fn mul(&self, other: &KoScalar) -> KoScalar {
        let mut out = KoScalar::zero();
        for (&a, &ca) in &self.terms {
            for (&b, &cb) in &other.terms {
                if let Some((k, t)) = a.mul(b) {
                    out.add_term(t, checked_mul(checked_mul(ca, cb), k));
                }
            }
        }
        out
    }
}

fn token_name(t: ScalarToken) -> String {
    let beta = |p: i64| match p {
        0 => String::new(),
        1 => "beta".to_string(),
        p => format!("beta^{p}"),
    };
    let join = |head: &str, p: i64| {
        let b = beta(p);
        match (head.is_empty(), b.is_empty()) {
            (true, true) => "1".to_string(),
            (true, false) => b,
            (false, true) => head.to_string(),
            (false, false) => format!("{head}*{b}"),
        }
    };
    match t {
        ScalarToken::Beta(p) => join("", p),
        ScalarToken::AlphaBeta(p) => join("alpha", p),
        ScalarToken::EBeta(p) => join("e", p),
        ScalarToken::E2Beta(p) => join("e^2", p),
    }
}

/// Renders one signed scalar term (used by the element renderer too).
pub(crate) fn render_scalar_term(t: ScalarToken, c: i128) -> String {
    let name = token_name(t);
    let abs = c.unsigned_abs();
    let sign = if c < 0 { "-" } else { "" };
    if name == "1" {
        format!("{sign}{abs}")
    } else if abs == 1 {
        format!("{sign}{name}")
    } else {
        format!("{sign}{abs}{name}")
    }
}

impl fmt::Display for KoScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(&t, &c)| render_scalar_term(t, c)).collect();
        write!(f, "{}", crate::ko_symbolic::notation::join_signed(&parts))
    }
}

impl fmt::Debug for KoScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_relations_hold() {
        let two = KoScalar::integer(2);
        let e = KoScalar::e();
        let alpha = KoScalar::alpha();
        assert!(two.mul(&e).is_zero());
        assert!(e.mul(&e).mul(&e).is_zero());
        assert!(e.mul(&alpha).is_zero());
        assert_eq!(alpha.mul(&alpha), KoScalar::beta(1).scale(4));
        assert_eq!(KoScalar::beta(1).mul(&KoScalar::beta(-1)), KoScalar::one());
    }

    #[test]
    fn realified_bott_powers() {
        assert_eq!(KoScalar::realified_bott_power(0), KoScalar::integer(2));
        assert!(KoScalar::realified_bott_power(1).is_zero());
        assert!(KoScalar::realified_bott_power(-3).is_zero());
        assert_eq!(KoScalar::realified_bott_power(2), KoScalar::alpha());
        assert_eq!(KoScalar::realified_bott_power(4), KoScalar::beta(1).scale(2));
        assert_eq!(
            KoScalar::realified_bott_power(-2),
            KoScalar::token(ScalarToken::AlphaBeta(-1), 1)
        );
    }

    #[test]
    fn degrees() {
        assert_eq!(KoScalar::alpha().degree(), Some(-4));
        assert_eq!(KoScalar::e().mul(&KoScalar::e()).degree(), Some(-2));
        assert_eq!(KoScalar::one().add(&KoScalar::alpha()).degree(), None);
        assert_eq!(KoScalar::zero().degree(), None);
    }

    #[test]
    fn rendering() {
        let s = KoScalar::integer(2).add(&KoScalar::token(ScalarToken::AlphaBeta(2), -3));
        assert_eq!(s.to_string(), "2 - 3alpha*beta^2");
    }
}
