//! Integer lattices given by Gram matrices, and the rank-3 algebraic Mukai
//! lattice `H^0 + Zh + H^4` of a K3 surface with `Pic = Zh`, `h^2 = 2d`.
//!
//! Everything here is exact: determinants are signed, sublattice bases are
//! reported in row Hermite normal form, and signatures come from Descartes'
//! rule applied to the (real-rooted) characteristic polynomial of the Gram
//! matrix.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::matrix::Matrix;

/// A non-degenerate integral lattice, i.e. a symmetric integer Gram matrix
/// with nonzero determinant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerLattice {
    gram: Matrix,
}

impl IntegerLattice {
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_square() || gram.rows() == 0 {
            return invalid("Gram matrix must be square and non-empty");
        }
        if !gram.is_symmetric() {
            return invalid("Gram matrix must be symmetric");
        }
        if gram.determinant().is_zero() {
            return invalid("Gram matrix is degenerate (determinant 0)");
        }
        Ok(IntegerLattice { gram })
    }

    pub fn from_i64<const C: usize>(rows: &[[i64; C]]) -> Result<Self> {
        Self::new(Matrix::from_i64(rows))
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    pub fn pairing(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        self.gram.bilinear(x, y)
    }

    /// Signed determinant of the Gram matrix.
    pub fn discriminant(&self) -> BigInt {
        discriminant(self)
    }

    pub fn discriminant_group(&self) -> Vec<BigInt> {
        discriminant_group(self)
    }

    pub fn signature(&self) -> (usize, usize) {
        signature(self)
    }
}

/// Signed determinant of the Gram matrix.
pub fn discriminant(lattice: &IntegerLattice) -> BigInt {
    lattice.gram.determinant()
}

/// Invariant factors of `L^* / L` (Smith normal form of the Gram matrix with
/// the trivial factors 1 removed). Their product is `|discriminant(L)|`.
pub fn discriminant_group(lattice: &IntegerLattice) -> Vec<BigInt> {
    lattice
        .gram
        .smith_invariants()
        .into_iter()
        .filter(|f| !f.is_one())
        .collect()
}

fn sign_changes(coeffs: impl Iterator<Item = BigInt>) -> usize {
    let mut changes = 0;
    let mut last: Option<bool> = None;
    for c in coeffs.filter(|c| !c.is_zero()) {
        let pos = c.is_positive();
        if last.is_some_and(|l| l != pos) {
            changes += 1;
        }
        last = Some(pos);
    }
    changes
}

/// `(positive, negative)` inertia of the Gram matrix.
///
/// The characteristic polynomial of a symmetric matrix has only real roots,
/// so Descartes' rule of signs counts them exactly.
pub fn signature(lattice: &IntegerLattice) -> (usize, usize) {
    let p = lattice.gram.charpoly();
    let pos = sign_changes(p.iter().cloned());
    let neg = sign_changes(
        p.iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }),
    );
    (pos, neg)
}

/// The Gram matrix of the rank-3 algebraic Mukai lattice in the basis
/// `(1,0,0), (0,h,0), (0,0,1)`.
pub fn mukai_gram(d: &BigInt) -> Matrix {
    let z = BigInt::zero;
    Matrix::from_rows(vec![
        vec![z(), z(), -BigInt::one()],
        vec![z(), BigInt::from(2) * d, z()],
        vec![-BigInt::one(), z(), z()],
    ])
    .expect("3x3")
}

pub fn mukai_lattice(d: &BigInt) -> Result<IntegerLattice> {
    if !d.is_positive() {
        return invalid("h^2 = 2d requires d > 0");
    }
    IntegerLattice::new(mukai_gram(d))
}

/// A Mukai vector `(r, t h, s)` on a K3 surface with `Pic = Zh`, `h^2 = 2d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MukaiVector {
    #[serde(with = "crate::report::bigint_str")]
    pub r: BigInt,
    #[serde(with = "crate::report::bigint_str")]
    pub t: BigInt,
    #[serde(with = "crate::report::bigint_str")]
    pub s: BigInt,
    #[serde(with = "crate::report::bigint_str")]
    pub d: BigInt,
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}h, {})", self.r, self.t, self.s)
    }
}

impl MukaiVector {
    pub fn new(r: BigInt, t: BigInt, s: BigInt, d: BigInt) -> Result<Self> {
        if !d.is_positive() {
            return invalid("h^2 = 2d requires d > 0");
        }
        Ok(MukaiVector { r, t, s, d })
    }

    pub fn from_i64(r: i64, t: i64, s: i64, d: i64) -> Result<Self> {
        Self::new(r.into(), t.into(), s.into(), d.into())
    }

    pub fn from_coords(c: &[BigInt], d: &BigInt) -> Result<Self> {
        match c {
            [r, t, s] => Self::new(r.clone(), t.clone(), s.clone(), d.clone()),
            _ => invalid("a Mukai vector has three coordinates"),
        }
    }

    pub fn coords(&self) -> [BigInt; 3] {
        [self.r.clone(), self.t.clone(), self.s.clone()]
    }

    pub fn h_squared(&self) -> BigInt {
        BigInt::from(2) * &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.t.is_zero() && self.s.is_zero()
    }

    pub fn is_primitive(&self) -> bool {
        self.r.gcd(&self.t).gcd(&self.s).is_one()
    }

    pub fn square(&self) -> BigInt {
        square(self)
    }

    pub fn pair(&self, other: &MukaiVector) -> Result<BigInt> {
        mukai_pairing(self, other)
    }
}

/// `<v, w> = 2d t1 t2 - r1 s2 - r2 s1`.
pub fn mukai_pairing(v: &MukaiVector, w: &MukaiVector) -> Result<BigInt> {
    if v.d != w.d {
        return invalid(format!(
            "Mukai vectors live on different lattices (h^2 = {} vs {})",
            v.h_squared(),
            w.h_squared()
        ));
    }
    Ok(BigInt::from(2) * &v.d * &v.t * &w.t - &v.r * &w.s - &w.r * &v.s)
}

/// `v^2 = 2d t^2 - 2 r s`.
pub fn square(v: &MukaiVector) -> BigInt {
    BigInt::from(2) * (&v.d * &v.t * &v.t - &v.r * &v.s)
}

/// A sublattice of an ambient lattice, with basis vectors as coordinate rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sublattice {
    ambient: IntegerLattice,
    basis: Matrix,
    gram: Matrix,
}

impl Sublattice {
    /// Rows of `basis` must be linearly independent vectors of the ambient lattice.
    pub fn new(ambient: IntegerLattice, basis: Matrix) -> Result<Self> {
        if basis.cols() != ambient.rank() {
            return invalid("basis vectors have the wrong length");
        }
        if basis.rank() != basis.rows() {
            return invalid("basis vectors are linearly dependent");
        }
        let gram = basis.congruence(ambient.gram())?;
        Ok(Sublattice {
            ambient,
            basis,
            gram,
        })
    }

    pub fn ambient(&self) -> &IntegerLattice {
        &self.ambient
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// The induced lattice, if it is non-degenerate.
    pub fn lattice(&self) -> Result<IntegerLattice> {
        IntegerLattice::new(self.gram.clone())
    }

    /// Coordinates of `x` in this basis, if `x` lies in the sublattice.
    pub fn coordinates_of(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        // Solve basis^T c = x through the Hermite form of [basis | I].
        let k = self.rank();
        let n = self.basis.cols();
        let mut rows = Vec::with_capacity(k);
        for i in 0..k {
            let mut row = self.basis.row(i).to_vec();
            row.extend((0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            rows.push(row);
        }
        let aug = Matrix::from_rows(rows).ok()?;
        // Greedy reduction of x against the echelon basis.
        let mut h = aug;
        h.hermite_in_place(n);
        let mut rest = x.to_vec();
        let mut coeff = vec![BigInt::zero(); k];
        for i in 0..h.rows() {
            let Some(c) = (0..n).find(|&c| !h[(i, c)].is_zero()) else {
                continue;
            };
            let (q, r) = rest[c].div_rem(&h[(i, c)]);
            if !r.is_zero() {
                return None;
            }
            for j in 0..n {
                rest[j] -= &q * &h[(i, j)];
            }
            for j in 0..k {
                coeff[j] += &q * &h[(i, n + j)];
            }
        }
        rest.iter().all(Zero::is_zero).then_some(coeff)
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.coordinates_of(x).is_some()
    }

    /// Index of this sublattice in its saturation: the gcd of the maximal
    /// minors of the basis, i.e. the product of its invariant factors.
    pub fn saturation_index(&self) -> BigInt {
        self.basis.smith_invariants().iter().map(|x| x.abs()).product()
    }
}

/// The orthogonal complement `v^perp` inside the rank-3 Mukai lattice, as a
/// saturated sublattice with a Hermite-normal-form basis.
pub fn orthogonal_complement(v: &MukaiVector) -> Result<Sublattice> {
    if v.is_zero() {
        return invalid("orthogonal complement of the zero vector");
    }
    let ambient = mukai_lattice(&v.d)?;
    let functional = Matrix::from_rows(vec![ambient.gram().mul_vec(&v.coords())?])?;
    let kernel = functional.integer_kernel();
    Sublattice::new(ambient, kernel)
}

/// Primitive closure `ambient ∩ (Q-span of S)`, with a Hermite basis.
/// Computed as the integer kernel of the integer kernel of the basis.
pub fn saturate(sub: &Sublattice) -> Sublattice {
    let n = sub.basis.cols();
    let k = sub.basis.integer_kernel();
    let basis = if k.rows() == 0 {
        Matrix::identity(n)
    } else {
        k.integer_kernel()
    };
    Sublattice::new(sub.ambient.clone(), basis).expect("saturation has independent rows")
}

/// The sublattice spanned by the given Mukai vectors (which must be independent).
pub fn span(vectors: &[MukaiVector]) -> Result<Sublattice> {
    let Some(first) = vectors.first() else {
        return invalid("empty span");
    };
    let ambient = mukai_lattice(&first.d)?;
    let rows = vectors
        .iter()
        .map(|v| {
            if v.d != first.d {
                invalid("mixed h^2 in span")
            } else {
                Ok(v.coords().to_vec())
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Sublattice::new(ambient, Matrix::from_rows(rows)?)
}
