//! The concrete matrix model.
//!
//! `gl(n,n)` is realized as `2n x 2n` rational matrices with rows and columns
//! labelled `+1..+n, -1..-n`; positive labels span the even half of the
//! underlying superspace, negative labels the odd half. On top of it sit the
//! supertrace, the supercommutator, the involution `sigma: E_{i,j} ->
//! E_{-i,-j}`, the quotient of the supertraceless algebra by its
//! one-dimensional center, and the two eigenspaces of `sigma` on that
//! quotient. The fixed eigenspace is the strange Lie superalgebra the whole
//! workbench is about.

use crate::linalg::{independent_subset, RatMatrix};
use crate::report::{Finding, Status};
use crate::scalars::{rat, rational_string, Rational};
use num_traits::Zero;
use serde::Serialize;

pub const SUITE: &str = "model";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelConfig {
    pub n: usize,
}

impl ModelConfig {
    pub fn new(n: usize) -> Result<ModelConfig, ModelError> {
        if n < 2 {
            return Err(ModelError::BadConfig(n));
        }
        Ok(ModelConfig { n })
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    /// Dimension of each sigma-eigenspace on the centerless quotient.
    pub fn eigenspace_dim(&self) -> usize {
        2 * self.n * self.n - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("the model needs n >= 2, got n = {0}")]
    BadConfig(usize),
    #[error("matrix has nonzero supertrace {0}")]
    NotTraceless(String),
    #[error("generator {0} failed its sigma-eigenvector or parity validation")]
    EigenspaceViolation(String),
}

/// Z2 parity of a homogeneous element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }
}

/// Eigenvalue of the involution on a homogeneous element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaType {
    /// Eigenvalue `+1`.
    Fixed,
    /// Eigenvalue `-1`.
    Anti,
}

/// Parity of a basis index: the first `n` indices are even, the rest odd.
pub fn index_parity(n: usize, idx: usize) -> Parity {
    if idx < n {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// Maps a signed label `+1..+n / -1..-n` to a row index `0..2n`.
pub fn label_to_index(n: usize, label: i64) -> usize {
    let a = label.unsigned_abs() as usize;
    assert!(a >= 1 && a <= n && label != 0, "label out of range: {label}");
    if label > 0 {
        a - 1
    } else {
        n + a - 1
    }
}

/// Inverse of [`label_to_index`].
pub fn index_to_label(n: usize, idx: usize) -> i64 {
    if idx < n {
        (idx + 1) as i64
    } else {
        -((idx - n + 1) as i64)
    }
}

/// Image of an index under the involution (label negation).
pub fn sigma_index(n: usize, idx: usize) -> usize {
    if idx < n {
        idx + n
    } else {
        idx - n
    }
}

/// Dense `2n x 2n` rational matrix, the working element of `gl(n,n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMatrix {
    pub n: usize,
    entries: Vec<Rational>,
}

impl GradedMatrix {
    pub fn zero(n: usize) -> GradedMatrix {
        GradedMatrix { n, entries: vec![Rational::zero(); 4 * n * n] }
    }

    pub fn identity(n: usize) -> GradedMatrix {
        let mut m = GradedMatrix::zero(n);
        for i in 0..2 * n {
            *m.at_mut(i, i) = rat(1);
        }
        m
    }

    /// Matrix unit `E_{a,b}` for signed labels.
    pub fn unit(n: usize, a: i64, b: i64) -> GradedMatrix {
        let mut m = GradedMatrix::zero(n);
        *m.at_mut(label_to_index(n, a), label_to_index(n, b)) = rat(1);
        m
    }

    pub fn at(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * 2 * self.n + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rational {
        &mut self.entries[r * 2 * self.n + c]
    }

    pub fn entry_by_label(&self, a: i64, b: i64) -> &Rational {
        self.at(label_to_index(self.n, a), label_to_index(self.n, b))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn add(&self, other: &GradedMatrix) -> GradedMatrix {
        assert_eq!(self.n, other.n);
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        GradedMatrix { n: self.n, entries }
    }

    pub fn sub(&self, other: &GradedMatrix) -> GradedMatrix {
        assert_eq!(self.n, other.n);
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        GradedMatrix { n: self.n, entries }
    }

    pub fn neg(&self) -> GradedMatrix {
        GradedMatrix { n: self.n, entries: self.entries.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, c: &Rational) -> GradedMatrix {
        GradedMatrix { n: self.n, entries: self.entries.iter().map(|a| a * c).collect() }
    }

    pub fn matmul(&self, other: &GradedMatrix) -> GradedMatrix {
        assert_eq!(self.n, other.n);
        let d = 2 * self.n;
        let mut out = GradedMatrix::zero(self.n);
        for r in 0..d {
            for k in 0..d {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..d {
                    let b = other.at(k, c);
                    if !b.is_zero() {
                        *out.at_mut(r, c) += a * b;
                    }
                }
            }
        }
        out
    }

    /// Even part: the two diagonal blocks.
    pub fn even_part(&self) -> GradedMatrix {
        self.parity_part(Parity::Even)
    }

    /// Odd part: the two off-diagonal blocks.
    pub fn odd_part(&self) -> GradedMatrix {
        self.parity_part(Parity::Odd)
    }

    fn parity_part(&self, p: Parity) -> GradedMatrix {
        let d = 2 * self.n;
        let mut out = GradedMatrix::zero(self.n);
        for r in 0..d {
            for c in 0..d {
                let cell = if index_parity(self.n, r) == index_parity(self.n, c) {
                    Parity::Even
                } else {
                    Parity::Odd
                };
                if cell == p {
                    *out.at_mut(r, c) = self.at(r, c).clone();
                }
            }
        }
        out
    }

    /// Parity as a homogeneous element, `None` when mixed (or zero).
    pub fn parity(&self) -> Option<Parity> {
        let even = !self.even_part().is_zero();
        let odd = !self.odd_part().is_zero();
        match (even, odd) {
            (true, false) => Some(Parity::Even),
            (false, true) => Some(Parity::Odd),
            _ => None,
        }
    }

    /// Flat list of entries, for rank computations.
    pub fn vectorize(&self) -> Vec<Rational> {
        self.entries.clone()
    }

    /// Compact listing of the nonzero entries, used in witnesses.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        let d = 2 * self.n;
        for r in 0..d {
            for c in 0..d {
                let e = self.at(r, c);
                if !e.is_zero() {
                    parts.push(format!(
                        "E[{},{}]={}",
                        index_to_label(self.n, r),
                        index_to_label(self.n, c),
                        rational_string(e)
                    ));
                }
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ")
        }
    }
}

/// `str(A) = tr(A_{++}) - tr(A_{--})`.
pub fn supertrace(a: &GradedMatrix) -> Rational {
    let mut s = Rational::zero();
    for i in 0..a.n {
        s += a.at(i, i);
        s -= a.at(a.n + i, a.n + i);
    }
    s
}

/// `sigma(E_{a,b}) = E_{-a,-b}`, extended linearly. An algebra automorphism
/// squaring to the identity.
pub fn sigma_apply(a: &GradedMatrix) -> GradedMatrix {
    let d = 2 * a.n;
    let mut out = GradedMatrix::zero(a.n);
    for r in 0..d {
        for c in 0..d {
            let e = a.at(r, c);
            if !e.is_zero() {
                *out.at_mut(sigma_index(a.n, r), sigma_index(a.n, c)) = e.clone();
            }
        }
    }
    out
}

/// Supercommutator `[A,B] = AB - (-1)^{|A||B|} BA`, extended bilinearly over
/// the automatic parity decomposition of both arguments.
pub fn supercommutator(a: &GradedMatrix, b: &GradedMatrix) -> GradedMatrix {
    let mut out = GradedMatrix::zero(a.n);
    for (pa, ma) in [(Parity::Even, a.even_part()), (Parity::Odd, a.odd_part())] {
        if ma.is_zero() {
            continue;
        }
        for (pb, mb) in [(Parity::Even, b.even_part()), (Parity::Odd, b.odd_part())] {
            if mb.is_zero() {
                continue;
            }
            let ab = ma.matmul(&mb);
            let ba = mb.matmul(&ma);
            let term = if pa == Parity::Odd && pb == Parity::Odd {
                ab.add(&ba)
            } else {
                ab.sub(&ba)
            };
            out = out.add(&term);
        }
    }
    out
}

/// The linear functional that fixes the canonical section of the quotient by
/// the center: `lambda(a) = (a_{+1,+1} + a_{-1,-1}) / 2`, so `lambda(I) = 1`.
pub fn center_coefficient(a: &GradedMatrix) -> Rational {
    let half = crate::scalars::frac(1, 2);
    (a.entry_by_label(1, 1) + a.entry_by_label(-1, -1)) * half
}

/// Canonical representative of a supertraceless matrix modulo the center:
/// subtracts `lambda(a) * I`. Idempotent; errors when `str(a) != 0`.
pub fn canonical_project(a: &GradedMatrix) -> Result<GradedMatrix, ModelError> {
    let s = supertrace(a);
    if !s.is_zero() {
        return Err(ModelError::NotTraceless(rational_string(&s)));
    }
    let lambda = center_coefficient(a);
    Ok(a.sub(&GradedMatrix::identity(a.n).scale(&lambda)))
}

/// An element of the simple quotient, held as its canonical representative.
/// Two elements are equal iff their representatives are entrywise equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QElement {
    rep: GradedMatrix,
}

impl QElement {
    /// Projects a supertraceless matrix into the quotient.
    pub fn project(m: &GradedMatrix) -> Result<QElement, ModelError> {
        Ok(QElement { rep: canonical_project(m)? })
    }

    pub fn zero(n: usize) -> QElement {
        QElement { rep: GradedMatrix::zero(n) }
    }

    pub fn n(&self) -> usize {
        self.rep.n
    }

    /// The canonical representative.
    pub fn rep(&self) -> &GradedMatrix {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn add(&self, other: &QElement) -> QElement {
        QElement { rep: self.rep.add(&other.rep) }
    }

    pub fn sub(&self, other: &QElement) -> QElement {
        QElement { rep: self.rep.sub(&other.rep) }
    }

    pub fn neg(&self) -> QElement {
        QElement { rep: self.rep.neg() }
    }

    pub fn scale(&self, c: &Rational) -> QElement {
        QElement { rep: self.rep.scale(c) }
    }

    /// Supercommutator in the quotient. Well defined because the center is
    /// central and supercommutators are supertraceless.
    pub fn bracket(&self, other: &QElement) -> QElement {
        let raw = supercommutator(&self.rep, &other.rep);
        QElement::project(&raw).expect("supercommutators are supertraceless")
    }

    pub fn parity(&self) -> Option<Parity> {
        self.rep.parity()
    }

    /// Eigenvalue type under the involution, `None` when mixed.
    pub fn sigma_type(&self) -> Option<SigmaType> {
        if self.is_zero() {
            return Some(SigmaType::Fixed);
        }
        let image = sigma_apply(&self.rep);
        if image == self.rep {
            Some(SigmaType::Fixed)
        } else if image == self.rep.neg() {
            Some(SigmaType::Anti)
        } else {
            None
        }
    }

    pub fn apply_sigma(&self) -> QElement {
        // sigma commutes with the canonical section: lambda(sigma a) = lambda(a).
        QElement { rep: sigma_apply(&self.rep) }
    }

    pub fn describe(&self) -> String {
        self.rep.describe()
    }
}

/// A sigma-fixed generator together with its anti-fixed partner (the
/// superscript element obtained by flipping the relative sign of the two
/// summands).
#[derive(Debug, Clone)]
pub struct GeneratorPair {
    pub fixed: QElement,
    pub anti: QElement,
}

/// All generators of the fixed subalgebra plus their anti-fixed partners,
/// indexed `1..n-1` (stored zero-based).
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    pub n: usize,
    pub h: Vec<GeneratorPair>,
    pub k: Vec<GeneratorPair>,
    pub x_plus: Vec<GeneratorPair>,
    pub x_minus: Vec<GeneratorPair>,
    pub xhat_plus: Vec<GeneratorPair>,
    pub xhat_minus: Vec<GeneratorPair>,
}

impl GeneratorSet {
    /// Cartan pairing of simple roots, `a_{ij} = 2 d_{ij} - d_{i,j+1} - d_{i+1,j}`.
    pub fn cartan(&self, i: usize, j: usize) -> Rational {
        let mut v = 0i64;
        if i == j {
            v += 2;
        }
        if i == j + 1 {
            v -= 1;
        }
        if j == i + 1 {
            v -= 1;
        }
        rat(v)
    }

    /// Twisted pairing `d_{i,j+1} - d_{i+1,j}`.
    pub fn twisted(&self, i: usize, j: usize) -> Rational {
        let mut v = 0i64;
        if i == j + 1 {
            v += 1;
        }
        if j == i + 1 {
            v -= 1;
        }
        rat(v)
    }

    pub fn pair(&self, family: Family, i: usize) -> &GeneratorPair {
        match family {
            Family::H => &self.h[i - 1],
            Family::K => &self.k[i - 1],
            Family::XPlus => &self.x_plus[i - 1],
            Family::XMinus => &self.x_minus[i - 1],
            Family::XHatPlus => &self.xhat_plus[i - 1],
            Family::XHatMinus => &self.xhat_minus[i - 1],
        }
    }
}

/// The six generator families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    H,
    K,
    XPlus,
    XMinus,
    XHatPlus,
    XHatMinus,
}

impl Family {
    pub const ALL: [Family; 6] =
        [Family::H, Family::K, Family::XPlus, Family::XMinus, Family::XHatPlus, Family::XHatMinus];

    pub fn parity(self) -> Parity {
        match self {
            Family::H | Family::XPlus | Family::XMinus => Parity::Even,
            Family::K | Family::XHatPlus | Family::XHatMinus => Parity::Odd,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Family::H => "h",
            Family::K => "k",
            Family::XPlus => "x+",
            Family::XMinus => "x-",
            Family::XHatPlus => "xhat+",
            Family::XHatMinus => "xhat-",
        }
    }
}

/// The printed Cartan formula, kept verbatim for the erratum audit: its
/// second summand repeats `E_{i,i}` instead of mirroring it, so the result
/// is not a sigma eigenvector.
pub fn literal_h_matrix(cfg: ModelConfig, i: usize) -> GradedMatrix {
    let n = cfg.n;
    let (i, j) = (i as i64, i as i64 + 1);
    GradedMatrix::unit(n, i, i)
        .sub(&GradedMatrix::unit(n, j, j))
        .add(&GradedMatrix::unit(n, i, i))
        .sub(&GradedMatrix::unit(n, -j, -j))
}

fn symmetrized_pair(n: usize, terms: &[(i64, i64, i64)]) -> (GradedMatrix, GradedMatrix) {
    // terms: signed coefficients on E_{a,b}; the partner negates the mirrored half.
    let mut fixed = GradedMatrix::zero(n);
    let mut anti = GradedMatrix::zero(n);
    for &(c, a, b) in terms {
        let u = GradedMatrix::unit(n, a, b).scale(&rat(c));
        let m = GradedMatrix::unit(n, -a, -b).scale(&rat(c));
        fixed = fixed.add(&u).add(&m);
        anti = anti.add(&u).sub(&m);
    }
    (fixed, anti)
}

fn validated_pair(
    name: String,
    n: usize,
    parity: Parity,
    terms: &[(i64, i64, i64)],
) -> Result<GeneratorPair, ModelError> {
    let (fixed_m, anti_m) = symmetrized_pair(n, terms);
    let fixed = QElement::project(&fixed_m).map_err(|_| ModelError::EigenspaceViolation(name.clone()))?;
    let anti = QElement::project(&anti_m).map_err(|_| ModelError::EigenspaceViolation(name.clone()))?;
    let ok = fixed.sigma_type() == Some(SigmaType::Fixed)
        && anti.sigma_type() == Some(SigmaType::Anti)
        && fixed.parity() == Some(parity)
        && anti.parity() == Some(parity);
    if !ok {
        return Err(ModelError::EigenspaceViolation(name));
    }
    Ok(GeneratorPair { fixed, anti })
}

/// Builds all `12(n-1)` generators and validates each against its eigenspace
/// and parity invariants.
pub fn build_generators(cfg: ModelConfig) -> Result<GeneratorSet, ModelError> {
    let n = cfg.n;
    let mut set = GeneratorSet {
        n,
        h: Vec::new(),
        k: Vec::new(),
        x_plus: Vec::new(),
        x_minus: Vec::new(),
        xhat_plus: Vec::new(),
        xhat_minus: Vec::new(),
    };
    for i in 1..n {
        let (i, j) = (i as i64, i as i64 + 1);
        set.h.push(validated_pair(
            format!("h_{i}"),
            n,
            Parity::Even,
            &[(1, i, i), (-1, j, j)],
        )?);
        set.x_plus.push(validated_pair(format!("x+_{i}"), n, Parity::Even, &[(1, i, j)])?);
        set.x_minus.push(validated_pair(format!("x-_{i}"), n, Parity::Even, &[(1, j, i)])?);
        set.k.push(validated_pair(
            format!("k_{i}"),
            n,
            Parity::Odd,
            &[(1, i, -i), (-1, j, -j)],
        )?);
        set.xhat_plus.push(validated_pair(format!("xhat+_{i}"), n, Parity::Odd, &[(1, i, -j)])?);
        set.xhat_minus.push(validated_pair(format!("xhat-_{i}"), n, Parity::Odd, &[(1, j, -i)])?);
    }
    Ok(set)
}

/// The odd diagonal direction `sum_c E_{c,-c} + E_{-c,c}`, outside the span
/// of the displayed generators but inside the fixed eigenspace; needed to
/// expand the zero-weight blocks of the Casimir tensors.
pub fn odd_identity(cfg: ModelConfig) -> QElement {
    let n = cfg.n;
    let mut m = GradedMatrix::zero(n);
    for c in 1..=n as i64 {
        m = m.add(&GradedMatrix::unit(n, c, -c)).add(&GradedMatrix::unit(n, -c, c));
    }
    QElement::project(&m).expect("odd matrices are supertraceless")
}

/// Exact bases of both sigma-eigenspaces on the quotient, found by
/// projecting the symmetrized and antisymmetrized matrix units and
/// rank-reducing the spans.
pub fn eigenspace_split(cfg: ModelConfig) -> (Vec<QElement>, Vec<QElement>) {
    let n = cfg.n;
    let d = 2 * n;
    let mut fixed = Vec::new();
    let mut anti = Vec::new();
    for r in 0..d {
        for c in 0..d {
            let a = index_to_label(n, r);
            let b = index_to_label(n, c);
            let u = GradedMatrix::unit(n, a, b);
            let m = GradedMatrix::unit(n, -a, -b);
            let plus = u.add(&m);
            let minus = u.sub(&m);
            if supertrace(&plus).is_zero() {
                fixed.push(QElement::project(&plus).unwrap());
            }
            if supertrace(&minus).is_zero() {
                anti.push(QElement::project(&minus).unwrap());
            } else {
                // Diagonal units need a supertraceless partner; pair each
                // with the mirrored last diagonal difference.
                let ref_l = n as i64;
                let partner = GradedMatrix::unit(n, ref_l, ref_l).sub(&GradedMatrix::unit(n, -ref_l, -ref_l));
                let comb = minus.sub(&partner);
                if supertrace(&comb).is_zero() {
                    anti.push(QElement::project(&comb).unwrap());
                }
            }
        }
    }
    (reduce_to_basis(fixed), reduce_to_basis(anti))
}

fn reduce_to_basis(span: Vec<QElement>) -> Vec<QElement> {
    let vecs: Vec<Vec<Rational>> = span.iter().map(|q| q.rep.vectorize()).collect();
    independent_subset(&vecs).into_iter().map(|i| span[i].clone()).collect()
}

/// Rank of a family of quotient elements.
pub fn span_rank(elems: &[QElement]) -> usize {
    let vecs: Vec<Vec<Rational>> = elems.iter().map(|q| q.rep.vectorize()).collect();
    RatMatrix::from_rows(vecs).rank()
}

// --- level-0 relation audit -------------------------------------------------

/// The anchor strings double as the identity catalogue of the level-0 audit.
fn check_eq(
    findings: &mut Vec<Finding>,
    id: String,
    anchor: &str,
    lhs: &QElement,
    rhs: &QElement,
) {
    findings.push(Finding::check(SUITE, id, anchor, lhs == rhs, || {
        format!("residual = {}", lhs.sub(rhs).describe())
    }));
}

/// Barred combination `(1/n) (-sum_{r<i} r m_r + sum_{r>=i} (n-r) m_r)`
/// over elements indexed `1..n-1`; the out-of-range `r = 0` term is zero.
pub fn barred_combo(n: usize, items: &[QElement], i: usize) -> QElement {
    let mut acc = QElement::zero(items[0].n());
    for (r0, m) in items.iter().enumerate() {
        let r = r0 + 1;
        let c = if r < i { -(r as i64) } else { n as i64 - r as i64 };
        acc = acc.add(&m.scale(&rat(c)));
    }
    acc.scale(&crate::scalars::frac(1, n as i64))
}

/// Evaluates every level-0 relation of the defining presentation in the
/// matrix model. Failures of the implementation are `fail` findings;
/// discrepancies between a printed coefficient and the value the model
/// forces are documented as `info` findings next to the corrected check.
pub fn audit_level0(cfg: ModelConfig) -> Vec<Finding> {
    let gens = build_generators(cfg).expect("generators validate");
    let n = cfg.n;
    let mut out = Vec::new();

    // Erratum: the printed Cartan element is not a sigma eigenvector; the
    // symmetrized form used by the implementation is.
    for i in 1..n {
        let lit = literal_h_matrix(cfg, i);
        let lit_q = QElement::project(&lit).expect("literal form is supertraceless");
        let is_eigen = lit_q.sigma_type().is_some();
        out.push(Finding {
            suite: SUITE.into(),
            id: format!("level0/h-formula-erratum/i={i}"),
            anchor: "h_i = pi((E_ii - E_{i+1,i+1}) + (E_ii - E_{-i-1,-i-1}))".into(),
            status: Status::Info,
            witness: Some(if is_eigen {
                "literal form unexpectedly is a sigma eigenvector".into()
            } else {
                format!(
                    "literal form is not a sigma eigenvector (sigma image differs by {}); \
                     the sigma-symmetrized form (E_ii - E_{{i+1,i+1}}) + (E_{{-i,-i}} - E_{{-i-1,-i-1}}) validates",
                    sigma_apply(lit_q.rep()).sub(lit_q.rep()).describe()
                )
            }),
        });
        // The corrected form must validate.
        out.push(Finding::check(
            SUITE,
            format!("level0/h-symmetrized/i={i}"),
            "sigma(h_i) = h_i and sigma(h^i) = -h^i",
            gens.h[i - 1].fixed.sigma_type() == Some(SigmaType::Fixed)
                && gens.h[i - 1].anti.sigma_type() == Some(SigmaType::Anti),
            || "validation failed".into(),
        ));
    }

    let h: Vec<&QElement> = gens.h.iter().map(|p| &p.fixed).collect();
    let k: Vec<&QElement> = gens.k.iter().map(|p| &p.fixed).collect();
    let hs: Vec<QElement> = h.iter().map(|q| (*q).clone()).collect();

    for i in 1..n {
        for j in 1..n {
            let a_ij = gens.cartan(i, j);
            let t_ij = gens.twisted(i, j);

            check_eq(
                &mut out,
                format!("level0/bracket-hh/i={i},j={j}"),
                "[h_i, h_j] = 0",
                &h[i - 1].bracket(h[j - 1]),
                &QElement::zero(n),
            );
            check_eq(
                &mut out,
                format!("level0/bracket-hk/i={i},j={j}"),
                "[h_i, k_j] = 0",
                &h[i - 1].bracket(k[j - 1]),
                &QElement::zero(n),
            );

            for (sign, fam, dual) in [(1i64, &gens.x_plus, &gens.xhat_plus), (-1, &gens.x_minus, &gens.xhat_minus)] {
                let s = if sign > 0 { "+" } else { "-" };
                check_eq(
                    &mut out,
                    format!("level0/bracket-hx{s}/i={i},j={j}"),
                    "[h_i, x±_j] = ±(a_i,a_j) x±_j",
                    &h[i - 1].bracket(&fam[j - 1].fixed),
                    &fam[j - 1].fixed.scale(&(a_ij.clone() * rat(sign))),
                );

                // The model forces the untwisted pairing here; the printed
                // level-0 table shows the twisted one.
                let lhs = k[i - 1].bracket(&fam[j - 1].fixed);
                let corrected = dual[j - 1].fixed.scale(&(a_ij.clone() * rat(sign)));
                check_eq(
                    &mut out,
                    format!("level0/bracket-kx{s}/i={i},j={j}"),
                    "[k_i, x±_j] = ±(a_i,a_j) xhat±_j",
                    &lhs,
                    &corrected,
                );
                let literal = dual[j - 1].fixed.scale(&(t_ij.clone() * rat(sign)));
                if literal != corrected {
                    out.push(Finding::info(
                        SUITE,
                        format!("level0/bracket-kx{s}-twisted-erratum/i={i},j={j}"),
                        "[k_i, x±_j] = ±~(a_i,a_j) xhat±_j (printed)",
                        format!(
                            "printed twisted coefficient {} disagrees with the model value {}; residual = {}",
                            rational_string(&(t_ij.clone() * rat(sign))),
                            rational_string(&(a_ij.clone() * rat(sign))),
                            lhs.sub(&literal).describe()
                        ),
                    ));
                }

                // [k_i, xhat±_j] carries the twisted pairing.
                check_eq(
                    &mut out,
                    format!("level0/bracket-kxhat{s}/i={i},j={j}"),
                    "[k_i, xhat±_j] = ±~(a_i,a_j) x±_j",
                    &k[i - 1].bracket(&dual[j - 1].fixed),
                    &fam[j - 1].fixed.scale(&(t_ij.clone() * rat(sign))),
                );
            }

            // [k_i, k_j] = 2(d_ij - d_{i,j+1}) hbar_i + 2(d_ij - d_{i,j-1}) hbar_{i+1}.
            let mut rhs = QElement::zero(n);
            let c1 = rat(2 * (i64::from(i == j) - i64::from(i == j + 1)));
            let c2 = rat(2 * (i64::from(i == j) - i64::from(j == i + 1)));
            if !c1.is_zero() {
                rhs = rhs.add(&barred_combo(n, &hs, i).scale(&c1));
            }
            if !c2.is_zero() {
                rhs = rhs.add(&barred_combo(n, &hs, i + 1).scale(&c2));
            }
            check_eq(
                &mut out,
                format!("level0/bracket-kk/i={i},j={j}"),
                "[k_i, k_j] = 2(d_ij - d_{i,j+1}) hbar_i + 2(d_ij - d_{i,j-1}) hbar_{i+1}",
                &k[i - 1].bracket(k[j - 1]),
                &rhs,
            );

            // [x+_i, x-_j] = d_ij h_i.
            let rhs = if i == j { h[i - 1].clone() } else { QElement::zero(n) };
            check_eq(
                &mut out,
                format!("level0/bracket-xpxm/i={i},j={j}"),
                "[x+_i, x-_j] = d_ij h_i",
                &gens.x_plus[i - 1].fixed.bracket(&gens.x_minus[j - 1].fixed),
                &rhs,
            );

            // [xhat+_i, x-_j] = [x+_i, xhat-_j] = d_ij k_i.
            let rhs = if i == j { k[i - 1].clone() } else { QElement::zero(n) };
            check_eq(
                &mut out,
                format!("level0/bracket-xhpxm/i={i},j={j}"),
                "[xhat+_i, x-_j] = d_ij k_i",
                &gens.xhat_plus[i - 1].fixed.bracket(&gens.x_minus[j - 1].fixed),
                &rhs,
            );
            check_eq(
                &mut out,
                format!("level0/bracket-xpxhm/i={i},j={j}"),
                "[x+_i, xhat-_j] = d_ij k_i",
                &gens.x_plus[i - 1].fixed.bracket(&gens.xhat_minus[j - 1].fixed),
                &rhs,
            );

            // [xhat±_i, x±_j] = [x±_i, xhat±_j] (the printed line is a tautology;
            // this is the substantive reading).
            for (s, fam, hat) in [("+", &gens.x_plus, &gens.xhat_plus), ("-", &gens.x_minus, &gens.xhat_minus)] {
                check_eq(
                    &mut out,
                    format!("level0/bracket-xhat-x-swap{s}/i={i},j={j}"),
                    "[xhat±_i, x±_j] = [x±_i, xhat±_j]",
                    &hat[i - 1].fixed.bracket(&fam[j - 1].fixed),
                    &fam[i - 1].fixed.bracket(&hat[j - 1].fixed),
                );
            }

            if i != j {
                for (s, fam, hat) in [("+", &gens.x_plus, &gens.xhat_plus), ("-", &gens.x_minus, &gens.xhat_minus)] {
                    let x_i = &fam[i - 1].fixed;
                    let x_j = &fam[j - 1].fixed;
                    let xh_i = &hat[i - 1].fixed;
                    let xh_j = &hat[j - 1].fixed;
                    check_eq(
                        &mut out,
                        format!("level0/serre-xx{s}/i={i},j={j}"),
                        "(ad x±_i)^2 x±_j = 0, i != j",
                        &x_i.bracket(&x_i.bracket(x_j)),
                        &QElement::zero(n),
                    );
                    check_eq(
                        &mut out,
                        format!("level0/serre-xhat-xhat-x{s}/i={i},j={j}"),
                        "[xhat±_i, [xhat±_i, x±_j]] = 0, i != j",
                        &xh_i.bracket(&xh_i.bracket(x_j)),
                        &QElement::zero(n),
                    );
                    check_eq(
                        &mut out,
                        format!("level0/serre-xhat-x-x{s}/i={i},j={j}"),
                        "[xhat±_i, [x±_i, x±_j]] = 0, i != j",
                        &xh_i.bracket(&x_i.bracket(x_j)),
                        &QElement::zero(n),
                    );
                    check_eq(
                        &mut out,
                        format!("level0/serre-x-x-xhat{s}/i={i},j={j}"),
                        "(ad x±_i)^2 xhat±_j = 0, i != j",
                        &x_i.bracket(&x_i.bracket(xh_j)),
                        &QElement::zero(n),
                    );

                    // [xhat±_i, xhat±_j] = [x±_i, x±_j]: the hat bracket is
                    // symmetric while the plain one is antisymmetric, so only
                    // one index order of each adjacent pair can match.
                    let lhs = xh_i.bracket(xh_j);
                    let rhs = x_i.bracket(x_j);
                    let id = format!("level0/bracket-xhat-xhat{s}/i={i},j={j}");
                    if lhs == rhs {
                        out.push(Finding::pass(SUITE, id, "[xhat±_i, xhat±_j] = [x±_i, x±_j], i != j"));
                    } else {
                        out.push(Finding::info(
                            SUITE,
                            id,
                            "[xhat±_i, xhat±_j] = [x±_i, x±_j], i != j (printed)",
                            format!(
                                "holds only for one index order of each adjacent pair: \
                                 the hat bracket is symmetric, the plain bracket antisymmetric; residual = {}",
                                lhs.sub(&rhs).describe()
                            ),
                        ));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::frac;
    use proptest::prelude::*;

    fn cfg(n: usize) -> ModelConfig {
        ModelConfig::new(n).unwrap()
    }

    #[test]
    fn supertrace_basics() {
        let n = 2;
        assert_eq!(supertrace(&GradedMatrix::unit(n, 1, 1)), rat(1));
        assert_eq!(supertrace(&GradedMatrix::unit(n, -1, -1)), rat(-1));
        assert_eq!(supertrace(&GradedMatrix::identity(n)), rat(0));
        // Odd matrices have empty diagonal blocks.
        assert_eq!(supertrace(&GradedMatrix::unit(n, 1, -2)), rat(0));
    }

    #[test]
    fn supercommutator_of_matrix_units() {
        let n = 2;
        let e12 = GradedMatrix::unit(n, 1, 2);
        let e21 = GradedMatrix::unit(n, 2, 1);
        let expect = GradedMatrix::unit(n, 1, 1).sub(&GradedMatrix::unit(n, 2, 2));
        assert_eq!(supercommutator(&e12, &e21), expect);
    }

    #[test]
    fn odd_self_bracket_of_k1_is_central() {
        // Brute force: k_1 is odd, so [k_1, k_1] = 2 k_1^2 = 2 I_4, which
        // dies in the quotient.
        let gens = build_generators(cfg(2)).unwrap();
        let k1 = &gens.k[0].fixed;
        let raw = supercommutator(k1.rep(), k1.rep());
        assert_eq!(raw, GradedMatrix::identity(2).scale(&rat(2)));
        assert!(k1.bracket(k1).is_zero());
    }

    #[test]
    fn even_self_bracket_vanishes() {
        let gens = build_generators(cfg(3)).unwrap();
        for p in &gens.x_plus {
            assert!(p.fixed.bracket(&p.fixed).is_zero());
        }
    }

    #[test]
    fn sigma_examples() {
        let n = 2;
        assert_eq!(sigma_apply(&GradedMatrix::unit(n, 1, -2)), GradedMatrix::unit(n, -1, 2));
        assert_eq!(sigma_apply(&GradedMatrix::identity(n)), GradedMatrix::identity(n));
    }

    #[test]
    fn canonical_projection_examples() {
        let n = 2;
        assert!(canonical_project(&GradedMatrix::identity(n)).unwrap().is_zero());
        assert!(canonical_project(&GradedMatrix::unit(n, 1, 1)).is_err());

        // lambda(h_1) = 1 on the symmetrized Cartan element at n = 2.
        let gens = build_generators(cfg(2)).unwrap();
        let (h1_raw, _) = symmetrized_pair(2, &[(1, 1, 1), (-1, 2, 2)]);
        assert_eq!(center_coefficient(&h1_raw), rat(1));
        let canon = canonical_project(&h1_raw).unwrap();
        assert_eq!(&canon, gens.h[0].fixed.rep());
        // Idempotent.
        assert_eq!(canonical_project(&canon).unwrap(), canon);
    }

    #[test]
    fn generators_validate_and_literal_h_does_not() {
        for n in 2..=4 {
            let gens = build_generators(cfg(n)).unwrap();
            assert_eq!(gens.h.len(), n - 1);
            let lit = QElement::project(&literal_h_matrix(cfg(n), 1)).unwrap();
            assert_eq!(lit.sigma_type(), None);
        }
        // x+_1 at n = 2 is exactly pi(E_{1,2} + E_{-1,-2}).
        let gens = build_generators(cfg(2)).unwrap();
        let expect = QElement::project(
            &GradedMatrix::unit(2, 1, 2).add(&GradedMatrix::unit(2, -1, -2)),
        )
        .unwrap();
        assert_eq!(gens.x_plus[0].fixed, expect);
        // k_1 is sigma-fixed and odd; h^1 is a (-1)-eigenvector.
        assert_eq!(gens.k[0].fixed.sigma_type(), Some(SigmaType::Fixed));
        assert_eq!(gens.k[0].fixed.parity(), Some(Parity::Odd));
        assert_eq!(gens.h[0].anti.sigma_type(), Some(SigmaType::Anti));
    }

    #[test]
    fn eigenspace_dimensions() {
        for n in 2..=4 {
            let (g0, g1) = eigenspace_split(cfg(n));
            let expect = 2 * n * n - 1;
            assert_eq!(g0.len(), expect, "fixed eigenspace at n={n}");
            assert_eq!(g1.len(), expect, "anti eigenspace at n={n}");
            assert_eq!(span_rank(&g0), expect);
            assert_eq!(span_rank(&g1), expect);
            for q in &g0 {
                assert_eq!(q.sigma_type(), Some(SigmaType::Fixed));
            }
            for q in &g1 {
                assert_eq!(q.sigma_type(), Some(SigmaType::Anti));
            }
        }
    }

    #[test]
    fn bracket_closure_of_eigenspaces() {
        let (g0, g1) = eigenspace_split(cfg(2));
        let in_span = |elems: &[QElement], q: &QElement| {
            let mut vecs: Vec<Vec<Rational>> = elems.iter().map(|e| e.rep().vectorize()).collect();
            let base = vecs.len();
            vecs.push(q.rep().vectorize());
            independent_subset(&vecs).len() == base
        };
        for a in &g0 {
            for b in &g0 {
                assert!(in_span(&g0, &a.bracket(b)), "fixed eigenspace closed under bracket");
            }
            for b in &g1 {
                assert!(in_span(&g1, &a.bracket(b)), "[fixed, anti] stays anti");
            }
        }
        for a in &g1 {
            for b in &g1 {
                assert!(in_span(&g0, &a.bracket(b)), "[anti, anti] lands in fixed");
            }
        }
    }

    #[test]
    fn level0_audit_is_clean() {
        for n in 2..=3 {
            let findings = audit_level0(cfg(n));
            assert!(!findings.is_empty());
            let failures: Vec<_> = findings.iter().filter(|f| f.status == Status::Fail).collect();
            assert!(failures.is_empty(), "unexpected failures: {failures:?}");
            // The printed-form errata are present.
            assert!(findings.iter().any(|f| f.id.starts_with("level0/h-formula-erratum")));
            if n > 2 {
                assert!(findings.iter().any(|f| f.id.contains("kx") && f.id.contains("twisted-erratum")));
                assert!(findings
                    .iter()
                    .any(|f| f.id.starts_with("level0/bracket-xhat-xhat") && f.status == Status::Info));
            }
        }
    }

    #[test]
    fn hand_checked_level0_bracket() {
        // (E_{1,2} + E_{-1,-2})(E_{2,1} + E_{-2,-1}) - reverse = h_1.
        let gens = build_generators(cfg(2)).unwrap();
        let lhs = gens.x_plus[0].fixed.bracket(&gens.x_minus[0].fixed);
        assert_eq!(lhs, gens.h[0].fixed);
    }

    #[test]
    fn barred_combo_telescopes() {
        // At n = 2: hbar_1 = h_1/2, hbar_2 = -h_1/2.
        let gens = build_generators(cfg(2)).unwrap();
        let hs: Vec<QElement> = gens.h.iter().map(|p| p.fixed.clone()).collect();
        assert_eq!(barred_combo(2, &hs, 1), hs[0].scale(&frac(1, 2)));
        assert_eq!(barred_combo(2, &hs, 2), hs[0].scale(&frac(-1, 2)));
    }

    fn arb_homogeneous(n: usize) -> impl Strategy<Value = QElement> {
        let d = 2 * n;
        (
            prop::collection::vec((0..d, 0..d, -3i64..4), 1..5),
            prop::bool::ANY,
        )
            .prop_map(move |(cells, odd)| {
                let mut m = GradedMatrix::zero(n);
                for (r, c, v) in cells {
                    *m.at_mut(r, c) += rat(v);
                }
                let part = if odd { m.odd_part() } else { m.even_part() };
                // Make it supertraceless by pairing with a diagonal unit.
                let s = supertrace(&part);
                let fixup = GradedMatrix::unit(n, 1, 1).scale(&s);
                QElement::project(&part.sub(&fixup)).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn supertrace_of_bracket_vanishes(a in arb_homogeneous(2), b in arb_homogeneous(2)) {
            let raw = supercommutator(a.rep(), b.rep());
            prop_assert_eq!(supertrace(&raw), rat(0));
        }

        #[test]
        fn sigma_is_an_automorphism(a in arb_homogeneous(2), b in arb_homogeneous(2)) {
            let lhs = sigma_apply(&supercommutator(a.rep(), b.rep()));
            let rhs = supercommutator(&sigma_apply(a.rep()), &sigma_apply(b.rep()));
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(a.apply_sigma().apply_sigma(), a);
        }

        #[test]
        fn super_jacobi(a in arb_homogeneous(2), b in arb_homogeneous(2), c in arb_homogeneous(2)) {
            // [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]]
            let pa = a.parity().unwrap_or(Parity::Even);
            let pb = b.parity().unwrap_or(Parity::Even);
            let lhs = a.bracket(&b.bracket(&c));
            let mut rhs = a.bracket(&b).bracket(&c);
            let term = b.bracket(&a.bracket(&c));
            rhs = if pa == Parity::Odd && pb == Parity::Odd {
                rhs.sub(&term)
            } else {
                rhs.add(&term)
            };
            prop_assert_eq!(lhs, rhs);
        }
    }
}
