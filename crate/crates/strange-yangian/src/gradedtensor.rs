//! Exact arithmetic in the graded tensor square and cube of the matrix
//! superalgebra.
//!
//! Tensors are sparse maps from tuples of matrix units `E_{ab} (x) E_{cd}
//! ((x) E_{ef})` to polynomial coefficients. Multiplication applies the
//! Koszul rule `(a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd` per
//! homogeneous term pair; the super flip and the supercommutator are built
//! on top of it. Quotient-awareness is deferred: tensors live over the full
//! matrix algebra and equality over the centerless quotient is decided
//! after projecting the center out of each leg.

use crate::scalars::{frac, Rational, SparsePoly};
use crate::supermodel::{index_parity, GradedMatrix, Parity, QElement};
use num_traits::Zero;
use std::collections::BTreeMap;

/// Packed matrix-unit index: `row * 2n + col`.
pub type UnitIdx = u32;
const SENTINEL: UnitIdx = UnitIdx::MAX;

/// Which pair of legs an order-2 tensor occupies inside the cube.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LegPair {
    L12,
    L13,
    L23,
}

fn unit_parity(n: usize, u: UnitIdx) -> Parity {
    let d = 2 * n as u32;
    let row = (u / d) as usize;
    let col = (u % d) as usize;
    if index_parity(n, row) == index_parity(n, col) {
        Parity::Even
    } else {
        Parity::Odd
    }
}

fn unit_mul(n: usize, a: UnitIdx, b: UnitIdx) -> Option<UnitIdx> {
    let d = 2 * n as u32;
    let (ra, ca) = (a / d, a % d);
    let (rb, cb) = (b / d, b % d);
    if ca == rb {
        Some(ra * d + cb)
    } else {
        None
    }
}

/// A sparse element of the graded tensor square or cube, with coefficients
/// in the polynomial ring. No zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperTensor {
    pub n: usize,
    pub order: usize,
    terms: BTreeMap<[UnitIdx; 3], SparsePoly>,
}

impl SuperTensor {
    pub fn zero(n: usize, order: usize) -> SuperTensor {
        assert!(order == 2 || order == 3);
        SuperTensor { n, order, terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[UnitIdx; 3], &SparsePoly)> {
        self.terms.iter()
    }

    pub fn insert(&mut self, key: [UnitIdx; 3], coeff: SparsePoly) {
        debug_assert!(key.iter().skip(self.order).all(|&k| k == SENTINEL));
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&coeff);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Total parity of one stored term.
    pub fn term_parity(&self, key: &[UnitIdx; 3]) -> Parity {
        let mut p = Parity::Even;
        for &u in key.iter().take(self.order) {
            if unit_parity(self.n, u) == Parity::Odd {
                p = p.flip();
            }
        }
        p
    }

    /// Parity as a homogeneous element, `None` when mixed.
    pub fn parity(&self) -> Option<Parity> {
        let mut seen = None;
        for key in self.terms.keys() {
            let p = self.term_parity(key);
            match seen {
                None => seen = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        seen.or(Some(Parity::Even))
    }

    pub fn add(&self, other: &SuperTensor) -> SuperTensor {
        assert_eq!((self.n, self.order), (other.n, other.order));
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SuperTensor) -> SuperTensor {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SuperTensor {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale_rational(&self, c: &Rational) -> SuperTensor {
        self.map_coeffs(|p| p.scale(c))
    }

    pub fn scale_poly(&self, c: &SparsePoly) -> SuperTensor {
        self.map_coeffs(|p| p.mul(c))
    }

    /// Applies a map to every coefficient, dropping zeros.
    pub fn map_coeffs(&self, f: impl Fn(&SparsePoly) -> SparsePoly) -> SuperTensor {
        let mut out = SuperTensor::zero(self.n, self.order);
        for (k, c) in &self.terms {
            out.insert(*k, f(c));
        }
        out
    }

    /// The tensor unit `I (x) I ((x) I)`.
    pub fn unit(n: usize, order: usize) -> SuperTensor {
        let d = 2 * n as u32;
        let mut out = SuperTensor::zero(n, order);
        let diag: Vec<UnitIdx> = (0..d).map(|i| i * d + i).collect();
        let mut stack = vec![[SENTINEL; 3]];
        for leg in 0..order {
            let mut next = Vec::new();
            for key in &stack {
                for &u in &diag {
                    let mut k = *key;
                    k[leg] = u;
                    next.push(k);
                }
            }
            stack = next;
        }
        for k in stack {
            out.insert(k, SparsePoly::one());
        }
        out
    }

    /// Product with the Koszul sign per homogeneous term pair.
    pub fn mul(&self, other: &SuperTensor) -> SuperTensor {
        assert_eq!((self.n, self.order), (other.n, other.order));
        let mut out = SuperTensor::zero(self.n, self.order);
        for (kx, cx) in &self.terms {
            for (ky, cy) in &other.terms {
                if let Some((key, sign)) = self.term_product(kx, ky) {
                    let mut c = cx.mul(cy);
                    if sign < 0 {
                        c = c.neg();
                    }
                    out.insert(key, c);
                }
            }
        }
        out
    }

    fn term_product(&self, kx: &[UnitIdx; 3], ky: &[UnitIdx; 3]) -> Option<([UnitIdx; 3], i64)> {
        let mut key = [SENTINEL; 3];
        let mut sign = 1i64;
        for leg in 0..self.order {
            key[leg] = unit_mul(self.n, kx[leg], ky[leg])?;
        }
        // Koszul: each y-leg moves past the later x-legs.
        for s in 1..self.order {
            if unit_parity(self.n, kx[s]) == Parity::Odd {
                for r in 0..s {
                    if unit_parity(self.n, ky[r]) == Parity::Odd {
                        sign = -sign;
                    }
                }
            }
        }
        Some((key, sign))
    }

    /// Supercommutator `[X, Y] = XY - (-1)^{|X||Y|} YX`, bilinear over
    /// homogeneous terms.
    pub fn bracket(&self, other: &SuperTensor) -> SuperTensor {
        let mut out = self.mul(other);
        for (ky, cy) in &other.terms {
            let py = other.term_parity(ky);
            for (kx, cx) in &self.terms {
                let px = self.term_parity(kx);
                if let Some((key, sign)) = self.term_product(ky, kx) {
                    let flip = if px == Parity::Odd && py == Parity::Odd { 1 } else { -1 };
                    let mut c = cy.mul(cx);
                    if sign * flip < 0 {
                        c = c.neg();
                    }
                    out.insert(key, c);
                }
            }
        }
        out
    }

    /// Super flip of an order-2 tensor: swaps the legs with the Koszul sign.
    pub fn superflip(&self) -> SuperTensor {
        assert_eq!(self.order, 2);
        let mut out = SuperTensor::zero(self.n, 2);
        for (k, c) in &self.terms {
            let sign = unit_parity(self.n, k[0]) == Parity::Odd && unit_parity(self.n, k[1]) == Parity::Odd;
            let key = [k[1], k[0], SENTINEL];
            out.insert(key, if sign { c.neg() } else { c.clone() });
        }
        out
    }

    /// Embeds an order-2 tensor into the cube, inserting the identity in the
    /// unused leg.
    pub fn embed(&self, legs: LegPair) -> SuperTensor {
        assert_eq!(self.order, 2);
        let d = 2 * self.n as u32;
        let mut out = SuperTensor::zero(self.n, 3);
        for (k, c) in &self.terms {
            for i in 0..d {
                let id = i * d + i;
                let key = match legs {
                    LegPair::L12 => [k[0], k[1], id],
                    LegPair::L13 => [k[0], id, k[1]],
                    LegPair::L23 => [id, k[0], k[1]],
                };
                out.insert(key, c.clone());
            }
        }
        out
    }

    /// The matrix placed in one leg with identities elsewhere, scaled by a
    /// polynomial (used to form `a(u) (x) 1` and `1 (x) a(v)`).
    pub fn matrix_in_leg(m: &GradedMatrix, leg: usize, order: usize, coeff: &SparsePoly) -> SuperTensor {
        let n = m.n;
        let d = 2 * n as u32;
        let mut base = SuperTensor::zero(n, order);
        for r in 0..d {
            for c in 0..d {
                let e = m.at(r as usize, c as usize);
                if !e.is_zero() {
                    let mut key = [SENTINEL; 3];
                    key[leg] = r * d + c;
                    base.insert(key, coeff.scale(e));
                }
            }
        }
        // Fill the other legs with the identity.
        let mut out = SuperTensor::zero(n, order);
        for (k, c) in &base.terms {
            let mut keys = vec![*k];
            for other in 0..order {
                if other == leg {
                    continue;
                }
                let mut next = Vec::new();
                for key in &keys {
                    for i in 0..d {
                        let mut kk = *key;
                        kk[other] = i * d + i;
                        next.push(kk);
                    }
                }
                keys = next;
            }
            for key in keys {
                out.insert(key, c.clone());
            }
        }
        out
    }

    /// Order-2 tensor `a (x) b` from quotient elements, with coefficient.
    pub fn pure(a: &QElement, b: &QElement, coeff: &SparsePoly) -> SuperTensor {
        let n = a.n();
        let d = 2 * n as u32;
        let mut out = SuperTensor::zero(n, 2);
        let (ma, mb) = (a.rep(), b.rep());
        for ra in 0..d {
            for ca in 0..d {
                let ea = ma.at(ra as usize, ca as usize);
                if ea.is_zero() {
                    continue;
                }
                for rb in 0..d {
                    for cb in 0..d {
                        let eb = mb.at(rb as usize, cb as usize);
                        if eb.is_zero() {
                            continue;
                        }
                        out.insert(
                            [ra * d + ca, rb * d + cb, SENTINEL],
                            coeff.scale(&(ea * eb)),
                        );
                    }
                }
            }
        }
        out
    }

    /// Applies the involution to one leg (`E_{ab} -> E_{-a,-b}`).
    pub fn apply_sigma_leg(&self, leg: usize) -> SuperTensor {
        let n = self.n;
        let d = 2 * n as u32;
        let half = n as u32;
        let flip = |u: UnitIdx| {
            let (r, c) = (u / d, u % d);
            let fr = if r < half { r + half } else { r - half };
            let fc = if c < half { c + half } else { c - half };
            fr * d + fc
        };
        let mut out = SuperTensor::zero(n, self.order);
        for (k, c) in &self.terms {
            let mut key = *k;
            key[leg] = flip(key[leg]);
            out.insert(key, c.clone());
        }
        out
    }

    /// Swaps two polynomial variables in every coefficient.
    pub fn swap_vars(&self, a: usize, b: usize) -> SuperTensor {
        self.map_coeffs(|c| c.swap_vars(a, b))
    }

    /// Projects the center out of every leg: `E_aa -> E_aa - lambda(E_aa) I`
    /// with `lambda` supported on the two distinguished diagonal entries.
    pub fn project_legs(&self) -> SuperTensor {
        let n = self.n;
        let d = 2 * n as u32;
        let half = frac(1, 2);
        // Packed E_{+1,+1} and E_{-1,-1}: the support of the section functional.
        let specials: [UnitIdx; 2] = [0, n as u32 * d + n as u32];
        let mut cur = self.clone();
        for leg in 0..self.order {
            let mut next = SuperTensor::zero(n, self.order);
            for (k, c) in &cur.terms {
                next.insert(*k, c.clone());
                let u = k[leg];
                let (r, col) = (u / d, u % d);
                if r == col && specials.contains(&u) {
                    // subtract (1/2) I in this leg
                    for i in 0..d {
                        let mut kk = *k;
                        kk[leg] = i * d + i;
                        next.insert(kk, c.scale(&half).neg());
                    }
                }
            }
            cur = next;
        }
        cur
    }

    /// Zero test over the centerless quotient (legwise projection first).
    pub fn is_zero_mod_center(&self) -> bool {
        self.project_legs().is_zero()
    }

    /// Human-readable listing for witnesses, capped to keep reports bounded.
    pub fn describe(&self) -> String {
        const CAP: usize = 24;
        let n = self.n;
        let d = 2 * n as u32;
        let fmt_unit = |u: UnitIdx| {
            let (r, c) = ((u / d) as usize, (u % d) as usize);
            format!(
                "E[{},{}]",
                crate::supermodel::index_to_label(n, r),
                crate::supermodel::index_to_label(n, c)
            )
        };
        let mut parts = Vec::new();
        for (k, c) in self.terms.iter().take(CAP) {
            let legs: Vec<String> = k.iter().take(self.order).map(|&u| fmt_unit(u)).collect();
            parts.push(format!("{}: {}", legs.join("(x)"), c));
        }
        if self.terms.len() > CAP {
            parts.push(format!("... ({} terms total)", self.terms.len()));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("; ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;
    use crate::supermodel::GradedMatrix;
    use proptest::prelude::*;

    fn key2(a: UnitIdx, b: UnitIdx) -> [UnitIdx; 3] {
        [a, b, SENTINEL]
    }

    fn pack(n: usize, r: usize, c: usize) -> UnitIdx {
        (r * 2 * n + c) as UnitIdx
    }

    #[test]
    fn defining_sign_rule() {
        // (1 (x) b)(c (x) 1) = (-1)^{|b||c|} c (x) b for homogeneous units.
        let n = 2;
        let b = pack(n, 0, 2); // odd unit
        let c = pack(n, 3, 1); // odd unit
        let d = 2 * n as u32;
        let mut one_b = SuperTensor::zero(n, 2);
        let mut c_one = SuperTensor::zero(n, 2);
        for i in 0..d {
            one_b.insert(key2(i * d + i, b), SparsePoly::one());
            c_one.insert(key2(c, i * d + i), SparsePoly::one());
        }
        let lhs = one_b.mul(&c_one);
        let mut rhs = SuperTensor::zero(n, 2);
        rhs.insert(key2(c, b), SparsePoly::constant(rat(-1)));
        assert_eq!(lhs, rhs);

        // even (x) even times even (x) even carries no sign.
        let e = pack(n, 0, 1);
        let mut x = SuperTensor::zero(n, 2);
        x.insert(key2(e, pack(n, 1, 1)), SparsePoly::one());
        let mut y = SuperTensor::zero(n, 2);
        y.insert(key2(pack(n, 1, 0), pack(n, 1, 1)), SparsePoly::one());
        let p = x.mul(&y);
        let mut expect = SuperTensor::zero(n, 2);
        expect.insert(key2(pack(n, 0, 0), pack(n, 1, 1)), SparsePoly::one());
        assert_eq!(p, expect);
    }

    #[test]
    fn flip_is_a_sign_correct_involution() {
        let n = 2;
        let mut t = SuperTensor::zero(n, 2);
        t.insert(key2(pack(n, 0, 2), pack(n, 2, 1)), SparsePoly::one()); // odd (x) odd
        t.insert(key2(pack(n, 0, 1), pack(n, 1, 0)), SparsePoly::one()); // even (x) even
        let f = t.superflip();
        // odd-odd term picks up a minus, even-even swaps plainly.
        assert_eq!(f.terms().count(), 2);
        assert_eq!(f.superflip(), t);
    }

    #[test]
    fn embedding_is_a_homomorphism_per_leg_pair() {
        let n = 2;
        let mut t = SuperTensor::zero(n, 2);
        t.insert(key2(pack(n, 0, 2), pack(n, 3, 1)), SparsePoly::one());
        t.insert(key2(pack(n, 1, 1), pack(n, 0, 0)), SparsePoly::one());
        for legs in [LegPair::L12, LegPair::L13, LegPair::L23] {
            let e = t.embed(legs);
            assert_eq!(e.mul(&e), t.mul(&t).embed(legs));
        }
        // The inserted identity leg is even, so embedding preserves parity.
        let e = t.embed(LegPair::L13);
        for (k, _) in e.terms() {
            let original = [k[0], k[2], SENTINEL];
            assert_eq!(e.term_parity(k), t.term_parity(&original));
        }
    }

    #[test]
    fn unit_is_neutral() {
        let n = 2;
        let one = SuperTensor::unit(n, 2);
        let mut t = SuperTensor::zero(n, 2);
        t.insert(key2(pack(n, 0, 2), pack(n, 2, 1)), SparsePoly::var_pow(crate::scalars::U, 1));
        assert_eq!(one.mul(&t), t);
        assert_eq!(t.mul(&one), t);
    }

    #[test]
    fn self_bracket_of_even_tensor_vanishes() {
        let n = 2;
        let mut t = SuperTensor::zero(n, 2);
        t.insert(key2(pack(n, 0, 1), pack(n, 2, 3)), SparsePoly::one());
        assert!(t.bracket(&t).is_zero());
    }

    #[test]
    fn leg_projection_kills_identity() {
        let n = 2;
        let d = 2 * n as u32;
        let mut id_leg = SuperTensor::zero(n, 2);
        for i in 0..d {
            id_leg.insert(key2(i * d + i, pack(n, 0, 1)), SparsePoly::one());
        }
        assert!(id_leg.is_zero_mod_center());
        let m = GradedMatrix::unit(n, 1, 2);
        let t = SuperTensor::matrix_in_leg(&m, 1, 2, &SparsePoly::one());
        // I (x) E_{1,2} is nonzero mod center in the non-identity leg.
        assert!(!t.is_zero_mod_center());
    }

    prop_compose! {
        fn arb_tensor(n: usize, order: usize)(cells in prop::collection::vec(
            (0u32..16, 0u32..16, 0u32..16, -3i64..4), 1..5)
        ) -> SuperTensor {
            let d = (2 * n * 2 * n) as u32;
            let mut t = SuperTensor::zero(n, order);
            for (a, b, c, v) in cells {
                let mut key = [SENTINEL; 3];
                key[0] = a % d;
                key[1] = b % d;
                if order == 3 { key[2] = c % d; }
                t.insert(key, SparsePoly::constant(rat(v)));
            }
            t
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn multiplication_is_associative(
            a in arb_tensor(2, 2), b in arb_tensor(2, 2), c in arb_tensor(2, 2)
        ) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn flip_reverses_products_up_to_koszul(
            a in arb_tensor(2, 2), b in arb_tensor(2, 2)
        ) {
            // The flip is an algebra homomorphism of the tensor square.
            prop_assert_eq!(a.mul(&b).superflip(), a.superflip().mul(&b.superflip()));
        }
    }
}
