//! Exact scalar arithmetic.
//!
//! Three layers, all over arbitrary-precision rationals:
//!
//! * [`Rational`] — `num_rational::BigRational`, always reduced with positive
//!   denominator, rendered as `"p/q"` in every serialized artifact;
//! * [`SparsePoly`] — sparse multivariate polynomials in the fixed variable
//!   set `{u, v, w, h}` (`h` is the formal deformation parameter, kept as a
//!   plain polynomial variable since every checked identity has bounded
//!   `h`-degree);
//! * [`LaurentPoly`] — univariate Laurent polynomials in `u` with finitely
//!   many terms, which is all the residue pairing ever needs.
//!
//! Every value is immutable after construction and every operation is a pure
//! function, so the whole module is safe to share across threads.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator. Zero is `0/1`.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for the fraction `n/d`; panics on `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical `"p/q"` rendering, used by every JSON artifact. Integers keep
/// the explicit `/1` so the format is uniform.
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses the `"p/q"` rendering produced by [`rational_string`].
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (p, q) = s.split_once('/')?;
    let numer: BigInt = p.parse().ok()?;
    let denom: BigInt = q.parse().ok()?;
    if denom.is_zero() {
        return None;
    }
    Some(Rational::new(numer, denom))
}

/// Number of polynomial variables; the order is fixed globally.
pub const NVARS: usize = 4;
/// Variable names in canonical order. `h` is the deformation parameter.
pub const VAR_NAMES: [&str; NVARS] = ["u", "v", "w", "h"];
/// Index of `u`.
pub const U: usize = 0;
/// Index of `v`.
pub const V: usize = 1;
/// Index of `w`.
pub const W: usize = 2;
/// Index of the deformation parameter.
pub const HBAR: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    /// Exact division failed: the would-be remainder is nonzero. Upstream
    /// this signals an identity failure (a pole that should cancel did not).
    #[error("polynomial division left a nonzero remainder")]
    NotDivisible,
}

/// Exponent vector over `(u, v, w, h)`.
///
/// The ordering is graded lexicographic: total degree first, then the
/// exponent vectors compared with `u` most significant. Any fixed total
/// order would do; this one is pinned so canonical forms are stable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(idx: usize, exp: u16) -> Monomial {
        let mut e = [0; NVARS];
        e[idx] = exp;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = [0; NVARS];
        for i in 0..NVARS {
            e[i] = self.0[i] + other.0[i];
        }
        Monomial(e)
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        let mut e = [0; NVARS];
        for i in 0..NVARS {
            e[i] = self.0[i] - other.0[i];
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over [`Rational`] in the fixed variables.
///
/// Invariants: no zero coefficients are stored and the term map is ordered
/// by the graded-lexicographic [`Monomial`] order, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparsePoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl SparsePoly {
    pub fn zero() -> SparsePoly {
        SparsePoly::default()
    }

    pub fn one() -> SparsePoly {
        SparsePoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> SparsePoly {
        let mut p = SparsePoly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::ONE, c);
        }
        p
    }

    /// The monomial `var^exp` with coefficient one.
    pub fn var_pow(idx: usize, exp: u16) -> SparsePoly {
        SparsePoly::term(Monomial::var(idx, exp), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> SparsePoly {
        let mut p = SparsePoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&Monomial::ONE))
    }

    /// Constant term (zero if absent).
    pub fn constant_part(&self) -> Rational {
        self.terms.get(&Monomial::ONE).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (m, c) in &self.terms {
            out.terms.insert(*m, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero();
        }
        let mut out = SparsePoly::zero();
        for (m, a) in &self.terms {
            out.terms.insert(*m, a * c);
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (ma, ca) in &self.terms {
            out.terms.insert(ma.mul(m), ca.clone());
        }
        out
    }

    /// Total degree of the polynomial, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u16> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    /// True when every term has the same total degree `d`.
    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.total_degree() == d)
    }

    /// Exchanges two variables.
    pub fn swap_vars(&self, a: usize, b: usize) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (m, c) in &self.terms {
            let mut e = m.0;
            e.swap(a, b);
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Substitutes `x -> -x` for the given variable.
    pub fn negate_var(&self, var: usize) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (m, c) in &self.terms {
            let c = if m.0[var] % 2 == 1 { -c.clone() } else { c.clone() };
            out.terms.insert(*m, c);
        }
        out
    }

    /// Substitutes a rational value for one variable.
    pub fn eval_var(&self, var: usize, value: &Rational) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (m, c) in &self.terms {
            let mut e = m.0;
            let k = e[var];
            e[var] = 0;
            let mut c = c.clone();
            for _ in 0..k {
                c *= value;
            }
            out.add_term(Monomial(e), c);
        }
        out
    }

    /// Coefficient of `h^k` as a polynomial in the remaining variables.
    pub fn hbar_coefficient(&self, k: u16) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (m, c) in &self.terms {
            if m.0[HBAR] == k {
                let mut e = m.0;
                e[HBAR] = 0;
                out.add_term(Monomial(e), c.clone());
            }
        }
        out
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }
}

/// Exact quotient `num / den`.
///
/// Single-divisor reduction in the graded-lex order: at each step the
/// leading term of the running remainder must be divisible by the leading
/// term of `den`, otherwise that term could never be cancelled and the
/// division is not exact.
pub fn divide_exact(num: &SparsePoly, den: &SparsePoly) -> Result<SparsePoly, ScalarError> {
    let (dm, dc) = den.leading().ok_or(ScalarError::NotDivisible)?;
    let mut quotient = SparsePoly::zero();
    let mut rem = num.clone();
    while let Some((rm, rc)) = rem.leading() {
        if !dm.divides(rm) {
            return Err(ScalarError::NotDivisible);
        }
        let m = rm.div(dm);
        let c = rc / dc;
        let t = SparsePoly::term(m, c);
        rem = rem.sub(&t.mul(den));
        quotient = quotient.add(&t);
    }
    Ok(quotient)
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0/1");
        }
        // Leading term first.
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", rational_string(c))?;
            for (v, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, " {}", VAR_NAMES[v])?,
                    _ => write!(f, " {}^{}", VAR_NAMES[v], e)?,
                }
            }
        }
        Ok(())
    }
}

impl Serialize for SparsePoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<([u16; NVARS], String)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.0, rational_string(c)))
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SparsePoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<SparsePoly, D::Error> {
        let terms: Vec<([u16; NVARS], String)> = Vec::deserialize(deserializer)?;
        let mut p = SparsePoly::zero();
        for (e, c) in terms {
            let c = parse_rational(&c).ok_or_else(|| D::Error::custom("bad rational"))?;
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }
}

/// Univariate Laurent polynomial in `u`: finitely many terms, integer
/// exponents of either sign, no zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn term(exp: i64, c: Rational) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        p.add_term(exp, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, exp: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, a) in &self.terms {
            out.add_term(*e, a * c);
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }

    /// Multiplication by `u`.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            out.add_term(e + k, c.clone());
        }
        out
    }
}

/// The residue: coefficient of `u^{-1}`. Linear in its argument.
pub fn residue(f: &LaurentPoly) -> Rational {
    f.coeff(-1)
}

/// True when the rational is `p/q` with both parts small enough to matter
/// for display heuristics; used nowhere in the math itself.
pub fn is_negative(r: &Rational) -> bool {
    r.numer().is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn u() -> SparsePoly {
        SparsePoly::var_pow(U, 1)
    }

    fn v() -> SparsePoly {
        SparsePoly::var_pow(V, 1)
    }

    #[test]
    fn difference_of_squares() {
        let lhs = u().add(&v()).mul(&u().sub(&v()));
        let rhs = SparsePoly::var_pow(U, 2).sub(&SparsePoly::var_pow(V, 2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplication_by_zero_annihilates() {
        let p = u().add(&SparsePoly::constant(frac(3, 7))).mul(&v());
        assert!(p.mul(&SparsePoly::zero()).is_zero());
    }

    #[test]
    fn additive_inverse_cancels() {
        let p = SparsePoly::var_pow(U, 2).sub(&SparsePoly::var_pow(V, 2));
        assert!(p.add(&p.neg()).is_zero());
    }

    #[test]
    fn residue_picks_u_inverse() {
        let f = LaurentPoly::term(-1, rat(3)).add(&LaurentPoly::term(2, rat(5)));
        assert_eq!(residue(&f), rat(3));
        let g = LaurentPoly::term(0, rat(4)).add(&LaurentPoly::term(3, rat(1)));
        assert_eq!(residue(&g), rat(0));
        assert_eq!(residue(&LaurentPoly::term(-2, rat(1))), rat(0));
    }

    #[test]
    fn exact_division_examples() {
        let num = SparsePoly::var_pow(U, 2).sub(&SparsePoly::var_pow(V, 2));
        let den = u().sub(&v());
        assert_eq!(divide_exact(&num, &den).unwrap(), u().add(&v()));

        assert_eq!(
            divide_exact(&SparsePoly::zero(), &u().add(&v())).unwrap(),
            SparsePoly::zero()
        );

        let bad = SparsePoly::var_pow(U, 2).add(&SparsePoly::var_pow(V, 2));
        assert_eq!(divide_exact(&bad, &den), Err(ScalarError::NotDivisible));
    }

    #[test]
    fn display_and_parse_rational() {
        assert_eq!(rational_string(&frac(-3, 6)), "-1/2");
        assert_eq!(parse_rational("-1/2"), Some(frac(-1, 2)));
        assert_eq!(parse_rational("7/0"), None);
    }

    #[test]
    fn serde_round_trip() {
        let p = u().mul(&v()).scale(&frac(5, 3)).add(&SparsePoly::var_pow(HBAR, 2));
        let s = serde_json::to_string(&p).unwrap();
        let q: SparsePoly = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
    }

    prop_compose! {
        fn arb_poly()(terms in prop::collection::vec(
            ((0u16..3, 0u16..3, 0u16..2, 0u16..2), -6i64..7, 1i64..5), 0..6)
        ) -> SparsePoly {
            let mut p = SparsePoly::zero();
            for ((a, b, c, d), num, den) in terms {
                p.add_term(Monomial([a, b, c, d]), frac(num, den));
            }
            p
        }
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }

        #[test]
        fn division_round_trip(q in arb_poly(), d in arb_poly()) {
            prop_assume!(!d.is_zero());
            prop_assert_eq!(divide_exact(&q.mul(&d), &d).unwrap(), q);
        }

        #[test]
        fn residue_is_linear(
            exps_f in prop::collection::vec((-4i64..5, -5i64..6), 0..5),
            exps_g in prop::collection::vec((-4i64..5, -5i64..6), 0..5),
            a in -4i64..5, b in -4i64..5,
        ) {
            let mut f = LaurentPoly::zero();
            for (e, c) in exps_f { f.add_term(e, rat(c)); }
            let mut g = LaurentPoly::zero();
            for (e, c) in exps_g { g.add_term(e, rat(c)); }
            let lhs = residue(&f.scale(&rat(a)).add(&g.scale(&rat(b))));
            let rhs = rat(a) * residue(&f) + rat(b) * residue(&g);
            prop_assert_eq!(lhs, rhs);
            // residue(f * u) reads off the u^{-2} coefficient of f.
            prop_assert_eq!(residue(&f.shift(1)), f.coeff(-2));
        }
    }
}
