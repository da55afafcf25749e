//! Spherical twists on the algebraic Mukai lattice, their compositions, and
//! certified spectral radii computed from exact characteristic polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::diophantine::{exists_isotropic, forms::BinaryForm, unit_solution};
use crate::error::{invalid, Error, Result};
use crate::lattice::{mukai_gram, IntegerLattice, MukaiVector};
use crate::matrix::Matrix;
use crate::poly::{self, CertifiedInterval, Poly};

/// Integer matrix `M` with `M^T G M = G`. Vectors are columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegerIsometry {
    matrix: Matrix,
    gram: Matrix,
}

impl IntegerIsometry {
    pub fn new(matrix: Matrix, gram: Matrix) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() != gram.rows() {
            return invalid("matrix and Gram matrix sizes differ");
        }
        let pulled = matrix.transpose().mul(&gram)?.mul(&matrix)?;
        if pulled != gram {
            return invalid("matrix does not preserve the Gram matrix");
        }
        Ok(IntegerIsometry { matrix, gram })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn determinant(&self) -> BigInt {
        self.matrix.determinant()
    }

    pub fn trace(&self) -> BigInt {
        self.matrix.trace()
    }

    /// `det(x I - M)`, coefficients low to high.
    pub fn charpoly(&self) -> Poly {
        self.matrix.charpoly()
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(x).expect("dimension checked")
    }

    pub fn spectral_radius(&self) -> Result<SpectralRadius> {
        spectral_radius(self)
    }
}

/// `(d+1, d h, d^2 - d + 1)`, a class of square −2 for every `d`.
pub fn spherical_class(d: &BigInt) -> Result<MukaiVector> {
    if !d.is_positive() {
        return invalid("d must be positive");
    }
    MukaiVector::new(d + 1, d.clone(), d * d - d + 1, d.clone())
}

/// Twist along a (−2)-class: `x ↦ x + ⟨x, w⟩ w` on the basis `(1,0,0), (0,h,0), (0,0,1)`.
pub fn reflection(w: &MukaiVector) -> Result<IntegerIsometry> {
    if w.square() != BigInt::from(-2) {
        return invalid(format!("{w} has square {}, not -2", w.square()));
    }
    let gram = mukai_gram(&w.d);
    let wc = w.coords();
    let gw = gram.mul_vec(&wc)?;
    let mut m = Matrix::identity(3);
    for j in 0..3 {
        for i in 0..3 {
            m[(i, j)] += &gw[j] * &wc[i];
        }
    }
    IntegerIsometry::new(m, gram)
}

/// `g ∘ h`: apply `h` first.
pub fn compose(g: &IntegerIsometry, h: &IntegerIsometry) -> Result<IntegerIsometry> {
    if g.gram != h.gram {
        return invalid("isometries of different lattices");
    }
    IntegerIsometry::new(g.matrix.mul(&h.matrix)?, g.gram.clone())
}

/// The twist along `O_S`, class `(1, 0, 1)`.
pub fn twist_structure_sheaf(d: &BigInt) -> Result<IntegerIsometry> {
    reflection(&MukaiVector::new(BigInt::one(), BigInt::zero(), BigInt::one(), d.clone())?)
}

/// `Φ = Φ₁ ∘ Φ₂` with `Φ₁` the twist along `(1,0,1)` and `Φ₂` the twist
/// along [`spherical_class`].
pub fn composed_twist(d: &BigInt) -> Result<IntegerIsometry> {
    let phi1 = twist_structure_sheaf(d)?;
    let phi2 = reflection(&spherical_class(d)?)?;
    compose(&phi1, &phi2)
}

/// Characteristic polynomial of [`composed_twist`] divided by `x - 1`.
pub fn quadratic_factor(d: &BigInt) -> Result<Poly> {
    let cp = composed_twist(d)?.charpoly();
    poly::divide_by_linear(&cp, &BigInt::one())
        .ok_or_else(|| Error::Invariant("1 is not an eigenvalue of the composed twist".into()))
}

/// Where the dominant eigenvalue came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiusSource {
    /// every eigenvalue is ±1
    RootsOfUnity,
    RealRoot,
    ComplexPair,
}

/// Certified spectral radius with the factorization that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralRadius {
    #[serde(with = "crate::report::bigint_vec")]
    pub charpoly: Poly,
    /// multiplicities of the eigenvalues 1 and −1
    pub unit_multiplicities: (usize, usize),
    /// `charpoly` with the factors `x ∓ 1` removed
    #[serde(with = "crate::report::bigint_vec")]
    pub core: Poly,
    pub source: RadiusSource,
    pub interval: CertifiedInterval,
}

impl SpectralRadius {
    pub fn exceeds_one(&self) -> bool {
        self.interval.lo > BigRational::one()
    }
}

fn strip_units(mut p: Poly) -> (Poly, usize, usize) {
    let (mut plus, mut minus) = (0, 0);
    while poly::degree(&p) > 0 {
        if let Some(q) = poly::divide_by_linear(&p, &BigInt::one()) {
            p = q;
            plus += 1;
        } else if let Some(q) = poly::divide_by_linear(&p, &BigInt::from(-1)) {
            p = q;
            minus += 1;
        } else {
            break;
        }
    }
    (p, plus, minus)
}

fn abs_interval(x: &CertifiedInterval) -> CertifiedInterval {
    if !x.lo.is_negative() {
        x.clone()
    } else if !x.hi.is_positive() {
        CertifiedInterval {
            lo: -x.hi.clone(),
            hi: -x.lo.clone(),
        }
    } else {
        CertifiedInterval {
            lo: BigRational::zero(),
            hi: x.hi.clone().max(-x.lo.clone()),
        }
    }
}

/// Largest absolute value of a root of `p`, enclosed to width `10^-12`.
///
/// After removing the factors `x ∓ 1`, the remaining factor must either have
/// only real roots or be of degree at most 3; this covers every isometry of a
/// lattice of rank at most 3 (and all rank-2 isometries).
pub fn radius_of_polynomial(p: &[BigInt]) -> Result<SpectralRadius> {
    let width = poly::default_width();
    let (core, plus, minus) = strip_units(p.to_vec());
    let n = poly::degree(&core);
    let one = CertifiedInterval::point(BigRational::one());
    let done = |interval, source| {
        Ok(SpectralRadius {
            charpoly: p.to_vec(),
            unit_multiplicities: (plus, minus),
            core: core.clone(),
            source,
            interval,
        })
    };
    if n == 0 {
        return done(one, RadiusSource::RootsOfUnity);
    }
    let real = poly::real_roots(&core, &width);
    let mut best: Option<CertifiedInterval> = (plus + minus > 0).then_some(one);
    let take = |c: CertifiedInterval, best: &mut Option<CertifiedInterval>| {
        *best = Some(match best.take() {
            None => c,
            Some(b) => CertifiedInterval {
                lo: b.lo.max(c.lo),
                hi: b.hi.max(c.hi),
            },
        });
    };
    for r in &real {
        take(abs_interval(r), &mut best);
    }
    let complex = if real.len() == poly::squarefree_degree(&core) {
        None
    } else {
        match (n, real.len()) {
            (2, 0) => {
                // x^2 + b x + c with complex roots: |z|^2 = c / lead
                let c = BigRational::new(core[0].clone(), core[2].clone());
                Some(poly::sqrt_interval(&CertifiedInterval::point(c), &width))
            }
            (3, 1) => {
                // r |z|^2 = -c0 / lead
                let r = &real[0];
                if r.contains(&BigRational::zero()) {
                    return Err(Error::Invariant("eigenvalue too close to zero".into()));
                }
                let c = BigRational::new(-core[0].clone(), core[3].clone());
                let (a, b) = (&c / &r.lo, &c / &r.hi);
                let sq = CertifiedInterval {
                    lo: a.clone().min(b.clone()).max(BigRational::zero()),
                    hi: a.max(b),
                };
                Some(poly::sqrt_interval(&sq, &width))
            }
            (n, k) => {
                return invalid(format!(
                    "cannot certify complex roots of a degree-{n} factor with {k} real roots"
                ))
            }
        }
    };
    let source = if let Some(c) = complex {
        let before = best.clone();
        take(c, &mut best);
        if before == best {
            RadiusSource::RealRoot
        } else {
            RadiusSource::ComplexPair
        }
    } else {
        RadiusSource::RealRoot
    };
    done(best.expect("at least one root"), source)
}

pub fn spectral_radius(m: &IntegerIsometry) -> Result<SpectralRadius> {
    radius_of_polynomial(&m.charpoly())
}

/// Certified `f64` enclosure.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FloatInterval {
    pub lo: f64,
    pub hi: f64,
}

impl FloatInterval {
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn mid(&self) -> f64 {
        (self.lo + self.hi) / 2.0
    }

    pub fn scale(&self, k: f64) -> FloatInterval {
        FloatInterval {
            lo: poly::step_down(self.lo * k),
            hi: poly::step_up(self.hi * k),
        }
    }
}

pub fn log_interval(r: &SpectralRadius) -> FloatInterval {
    let (lo, hi) = poly::ln_bounds(&r.interval);
    FloatInterval {
        lo: lo.max(0.0),
        hi,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyReport {
    #[serde(with = "crate::report::bigint_str")]
    pub d: BigInt,
    pub matrix: Matrix,
    pub radius: SpectralRadius,
    pub log_rho: FloatInterval,
    /// `log ρ` bounds the categorical entropy of `Φ` from below.
    pub h_cat_lower: FloatInterval,
    pub v: Option<MukaiVector>,
    #[serde(with = "crate::report::opt_bigint_str")]
    pub dim_m: Option<BigInt>,
    /// `(dim M / 2) · log ρ`, the value bounded above by `(dim M / 2) · h_cat`.
    pub h_top: Option<FloatInterval>,
    /// Whether `Φ` fixes `v` (only with `v`).
    pub fixes_v: Option<bool>,
}

pub fn entropy_report(d: &BigInt, v: Option<&MukaiVector>) -> Result<EntropyReport> {
    let phi = composed_twist(d)?;
    let radius = phi.spectral_radius()?;
    let log_rho = log_interval(&radius);
    let (dim_m, h_top, fixes_v) = match v {
        None => (None, None, None),
        Some(v) => {
            if &v.d != d {
                return invalid(format!("{v} lives on h^2 = {}, not {}", v.h_squared(), 2 * d));
            }
            let sq = v.square();
            if !sq.is_positive() {
                return invalid("v must have positive square");
            }
            let dim = &sq + 2;
            let half = num_traits::ToPrimitive::to_f64(&(&dim / 2)).unwrap_or(f64::INFINITY);
            let image = phi.apply(&v.coords());
            (Some(dim), Some(log_rho.scale(half)), Some(image == v.coords()))
        }
    };
    Ok(EntropyReport {
        d: d.clone(),
        matrix: phi.matrix.clone(),
        radius,
        log_rho,
        h_cat_lower: log_rho,
        v: v.cloned(),
        dim_m,
        h_top,
        fixes_v,
    })
}

/// Generator of the orientation-preserving isometries of an anisotropic
/// rank-2 lattice of signature (1,1), from the least solution of
/// `t^2 - D u^2 = 4` for the discriminant `D` of its primitive form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FundamentalIsometry {
    pub isometry: IntegerIsometry,
    #[serde(with = "crate::report::bigint_str")]
    pub discriminant: BigInt,
    #[serde(with = "crate::report::bigint_str")]
    pub t: BigInt,
    #[serde(with = "crate::report::bigint_str")]
    pub u: BigInt,
    pub radius: SpectralRadius,
}

pub fn fundamental_isometry(n: &IntegerLattice) -> Result<FundamentalIsometry> {
    if n.rank() != 2 || n.signature() != (1, 1) {
        return invalid("expected a rank-2 lattice of signature (1,1)");
    }
    if exists_isotropic(n)?.isotropic {
        return invalid("lattice is isotropic; its isometry group is finite");
    }
    let g = n.gram();
    let form = BinaryForm::new(g[(0, 0)].clone(), BigInt::from(2) * &g[(0, 1)], g[(1, 1)].clone());
    let content = form.content();
    let prim = BinaryForm::new(&form.a / &content, &form.b / &content, &form.c / &content);
    let disc = prim.discriminant();
    let (t, u) = unit_solution(&disc);
    let m = prim.automorph(&t, &u);
    let matrix = Matrix::from_rows(vec![m.0[0].to_vec(), m.0[1].to_vec()])?;
    let isometry = IntegerIsometry::new(matrix, g.clone())?;
    let radius = isometry.spectral_radius()?;
    Ok(FundamentalIsometry {
        isometry,
        discriminant: disc,
        t,
        u,
        radius,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn spherical_classes() {
        for (d, want) in [(1, (2, 1, 1)), (2, (3, 2, 3)), (66, (67, 66, 4291))] {
            let w = spherical_class(&b(d)).unwrap();
            assert_eq!(w.coords(), [b(want.0), b(want.1), b(want.2)]);
            assert_eq!(w.square(), b(-2));
        }
    }

    #[test]
    fn twist_of_structure_sheaf() {
        for d in [1, 5, 66] {
            let m = twist_structure_sheaf(&b(d)).unwrap();
            assert_eq!(*m.matrix(), Matrix::from_i64(&[[0, 0, -1], [0, 1, 0], [-1, 0, 0]]));
        }
    }

    #[test]
    fn middle_column_of_second_twist() {
        for d in 1..20i64 {
            let m = reflection(&spherical_class(&b(d)).unwrap()).unwrap();
            let col = m.matrix().column(1);
            let want = [2 * d * d * (d + 1), 2 * d * d * d + 1, 2 * d * d * (d * d - d + 1)];
            assert_eq!(col, want.map(b).to_vec());
        }
    }

    #[test]
    fn composition_trace_and_det() {
        let phi = composed_twist(&b(1)).unwrap();
        assert_eq!(phi.trace(), b(8));
        assert_eq!(phi.determinant(), b(1));
        let phi1 = twist_structure_sheaf(&b(3)).unwrap();
        let sq = compose(&phi1, &phi1).unwrap();
        assert_eq!(*sq.matrix(), Matrix::identity(3));
    }

    #[test]
    fn radius_at_one_and_two() {
        let r = composed_twist(&b(1)).unwrap().spectral_radius().unwrap();
        let golden = (7.0 + 3.0 * 5f64.sqrt()) / 2.0;
        assert!(r.interval.within(golden, 1e-14));
        assert!(r.interval.width() <= poly::default_width());
        let r2 = composed_twist(&b(2)).unwrap().spectral_radius().unwrap();
        assert!(r2.interval.within(17.0 + 12.0 * 2f64.sqrt(), 1e-12));
        let id = twist_structure_sheaf(&b(1)).unwrap().spectral_radius().unwrap();
        assert_eq!(id.source, RadiusSource::RootsOfUnity);
        assert_eq!(id.interval, CertifiedInterval::point(BigRational::one()));
    }

    #[test]
    fn complex_pairs() {
        // x^2 + x + 1: roots on the unit circle
        let r = radius_of_polynomial(&[b(1), b(1), b(1)]).unwrap();
        assert!(r.interval.within(1.0, 1e-12));
        // (x - 2)(x^2 + 1)
        let r = radius_of_polynomial(&[b(-2), b(1), b(-2), b(1)]).unwrap();
        assert!(r.interval.within(2.0, 1e-12));
        // (x - 1/... ) x^3 - 8: real root 2, pair of modulus 2
        let r = radius_of_polynomial(&[b(-8), b(0), b(0), b(1)]).unwrap();
        assert!(r.interval.within(2.0, 1e-12));
    }

    #[test]
    fn log_rho_at_one() {
        let rep = entropy_report(&b(1), None).unwrap();
        assert!(rep.log_rho.contains(1.924_847_300_2) || (rep.log_rho.mid() - 1.924_847_300_2).abs() < 1e-10);
        assert!(rep.log_rho.hi - rep.log_rho.lo < 1e-11);
    }

    #[test]
    fn counter_example_fixes_v() {
        let v = MukaiVector::from_i64(1, 0, -1, 2).unwrap();
        let rep = entropy_report(&b(2), Some(&v)).unwrap();
        assert_eq!(rep.fixes_v, Some(true));
        assert_eq!(rep.dim_m, Some(b(4)));
    }

    #[test]
    fn fundamental_isometries() {
        let n = IntegerLattice::from_i64(&[[2, 0], [0, -6]]).unwrap();
        let f = fundamental_isometry(&n).unwrap();
        assert!(f.radius.interval.within(2.0 + 3f64.sqrt(), 1e-12));
        let n = IntegerLattice::from_i64(&[[6, -2], [-2, -24]]).unwrap();
        let f = fundamental_isometry(&n).unwrap();
        assert_eq!(f.discriminant, b(148));
        assert!(f.radius.exceeds_one());
        let h = IntegerLattice::from_i64(&[[0, 1], [1, 0]]).unwrap();
        assert!(fundamental_isometry(&h).is_err());
    }
}
