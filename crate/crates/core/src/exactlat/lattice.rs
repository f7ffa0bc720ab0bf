use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{from_big, to_big, IntMatrix};
use super::normal_form::{hnf_basis, hnf_with_rank, smith};
use crate::error::{Error, Result};

/// A subgroup of `Z^d`, stored by its canonical Hermite basis. Two values are
/// equal exactly when they describe the same subgroup.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntegerLattice {
    ambient_dim: usize,
    basis: IntMatrix,
}

impl IntegerLattice {
    pub fn zero(ambient_dim: usize) -> Self {
        IntegerLattice { ambient_dim, basis: IntMatrix::zeros(0, ambient_dim) }
    }

    pub fn full(ambient_dim: usize) -> Self {
        IntegerLattice { ambient_dim, basis: IntMatrix::identity(ambient_dim) }
    }

    /// The subgroup generated by `rows`.
    pub fn from_rows(ambient_dim: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let m = IntMatrix::from_i64_rows(ambient_dim, rows)?;
        Ok(Self::from_matrix(&m))
    }

    pub fn from_big_rows(ambient_dim: usize, rows: &[Vec<BigInt>]) -> Result<Self> {
        let m = IntMatrix::from_rows(ambient_dim, rows)?;
        Ok(Self::from_matrix(&m))
    }

    pub fn from_matrix(m: &IntMatrix) -> Self {
        IntegerLattice { ambient_dim: m.cols(), basis: hnf_basis(m) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<BigInt>> {
        self.basis.row_vecs()
    }

    pub fn basis_rows_i64(&self) -> Result<Vec<Vec<i64>>> {
        (0..self.rank()).map(|i| from_big(self.basis.row(i))).collect()
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: len });
        }
        Ok(())
    }

    /// Coefficients of `x` with respect to the stored basis, by back-substitution.
    pub fn coordinates(&self, x: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        self.check_dim(x.len())?;
        let mut rest = x.to_vec();
        let mut coeffs = Vec::with_capacity(self.rank());
        for i in 0..self.rank() {
            let row = self.basis.row(i);
            let c = row.iter().position(|v| !v.is_zero()).expect("basis rows are nonzero");
            let (q, r) = rest[c].div_rem(&row[c]);
            if !r.is_zero() {
                return Ok(None);
            }
            if !q.is_zero() {
                for (a, b) in rest.iter_mut().zip(row) {
                    *a -= &q * b;
                }
            }
            coeffs.push(q);
        }
        if rest.iter().all(Zero::is_zero) {
            Ok(Some(coeffs))
        } else {
            Ok(None)
        }
    }

    pub fn contains_big(&self, x: &[BigInt]) -> Result<bool> {
        Ok(self.coordinates(x)?.is_some())
    }

    pub fn contains(&self, x: &[i64]) -> Result<bool> {
        self.contains_big(&to_big(x))
    }

    /// Whether `other` is a subgroup of `self`.
    pub fn contains_lattice(&self, other: &IntegerLattice) -> Result<bool> {
        self.check_dim(other.ambient_dim)?;
        for row in other.basis_rows() {
            if !self.contains_big(&row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Intersection via the left kernel of the stacked bases.
    pub fn intersect(&self, other: &IntegerLattice) -> Result<IntegerLattice> {
        self.check_dim(other.ambient_dim)?;
        let k1 = self.rank();
        let mut stacked = self.basis_rows();
        stacked.extend(other.basis_rows());
        let m = IntMatrix::from_rows(self.ambient_dim, &stacked)?;
        let (_, u, rank) = hnf_with_rank(&m);
        let mut gens = Vec::new();
        for i in rank..m.rows() {
            let y = &u.row(i)[..k1];
            let v = self.basis.left_apply(y)?;
            gens.push(v);
        }
        IntegerLattice::from_big_rows(self.ambient_dim, &gens)
    }

    /// The lattice `a * self`.
    pub fn scaled(&self, a: &BigInt) -> IntegerLattice {
        let rows: Vec<Vec<BigInt>> =
            self.basis_rows().into_iter().map(|r| r.into_iter().map(|x| x * a).collect()).collect();
        IntegerLattice::from_big_rows(self.ambient_dim, &rows).expect("same dimension")
    }

    /// Coordinates of the basis of `sub` relative to the basis of `self`.
    fn relative_coordinates(&self, sub: &IntegerLattice) -> Result<IntMatrix> {
        self.check_dim(sub.ambient_dim)?;
        let mut rows = Vec::with_capacity(sub.rank());
        for r in sub.basis_rows() {
            match self.coordinates(&r)? {
                Some(c) => rows.push(c),
                None => {
                    return Err(Error::ContainmentViolation(format!(
                        "basis vector {:?} is not in the ambient lattice",
                        from_big(&r).unwrap_or_default()
                    )))
                }
            }
        }
        IntMatrix::from_rows(self.rank(), &rows)
    }
}

pub fn lattice_from_rows(ambient_dim: usize, rows: &[Vec<i64>]) -> Result<IntegerLattice> {
    IntegerLattice::from_rows(ambient_dim, rows)
}

pub fn lattice_member(l: &IntegerLattice, x: &[i64]) -> Result<bool> {
    l.contains(x)
}

pub fn lattice_intersect(l1: &IntegerLattice, l2: &IntegerLattice) -> Result<IntegerLattice> {
    l1.intersect(l2)
}

/// All `x` in `ambient` having a positive multiple in `l`.
pub fn saturation(ambient: &IntegerLattice, l: &IntegerLattice) -> Result<IntegerLattice> {
    let coords = ambient.relative_coordinates(l)?;
    if coords.rows() == 0 {
        return Ok(IntegerLattice::zero(ambient.ambient_dim()));
    }
    let s = smith(&coords);
    let mut rows = Vec::with_capacity(s.rank);
    for i in 0..s.rank {
        rows.push(ambient.basis().left_apply(s.v_inv.row(i))?);
    }
    IntegerLattice::from_big_rows(ambient.ambient_dim(), &rows)
}

/// The decomposition `ambient / sub = Z^free_rank (+) torsion`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientStructure {
    pub free_rank: usize,
    /// Invariant factors at least 2, each dividing the next.
    pub torsion_invariants: Vec<BigInt>,
    /// `free_rank x rank(ambient)`; acts on coordinates relative to the ambient basis.
    pub projection: IntMatrix,
    /// Ambient vectors whose classes generate the torsion part, with their orders.
    pub torsion_generators: Vec<(Vec<BigInt>, BigInt)>,
    ambient: IntegerLattice,
}

impl QuotientStructure {
    pub fn ambient(&self) -> &IntegerLattice {
        &self.ambient
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion_invariants.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion_invariants.iter().fold(BigInt::one(), |acc, d| acc * d)
    }

    /// Free-part coordinates of an ambient vector.
    pub fn project(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        let c = self.ambient.coordinates(x)?.ok_or_else(|| {
            Error::ContainmentViolation(format!(
                "vector {:?} is not in the ambient lattice",
                from_big(x).unwrap_or_default()
            ))
        })?;
        self.projection.apply(&c)
    }

    pub fn project_i64(&self, x: &[i64]) -> Result<Vec<i64>> {
        from_big(&self.project(&to_big(x))?)
    }
}

pub fn quotient_structure(ambient: &IntegerLattice, sub: &IntegerLattice) -> Result<QuotientStructure> {
    let coords = ambient.relative_coordinates(sub)?;
    let k = ambient.rank();
    let s = smith(&coords);
    let r = s.rank;
    let mut torsion_invariants = Vec::new();
    let mut torsion_generators = Vec::new();
    for i in 0..r {
        let d = s.d.get(i, i).abs();
        if d > BigInt::one() {
            torsion_generators.push((ambient.basis().left_apply(s.v_inv.row(i))?, d.clone()));
            torsion_invariants.push(d);
        }
    }
    let mut projection = IntMatrix::zeros(k - r, k);
    for (out_row, j) in (r..k).enumerate() {
        for i in 0..k {
            projection.set(out_row, i, s.v.get(i, j).clone());
        }
    }
    Ok(QuotientStructure {
        free_rank: k - r,
        torsion_invariants,
        projection,
        torsion_generators,
        ambient: ambient.clone(),
    })
}

/// Content (gcd of entries) of an integer vector; zero for the zero vector.
pub fn content(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(d: usize, rows: &[Vec<i64>]) -> IntegerLattice {
        IntegerLattice::from_rows(d, rows).unwrap()
    }

    fn gim_srin_s1() -> IntegerLattice {
        lat(3, &[vec![4, 0, 0], vec![3, 1, 0], vec![2, 2, 0], vec![1, 3, 0]])
    }

    fn gim_srin_s2() -> IntegerLattice {
        lat(3, &[vec![3, 3, 0], vec![3, 2, 1], vec![3, 1, 2], vec![3, 0, 3]])
    }

    #[test]
    fn from_rows_examples() {
        assert_eq!(lat(1, &[vec![2], vec![3]]), IntegerLattice::full(1));
        assert_eq!(lat(3, &[vec![6, 6, 0]]).basis_rows_i64().unwrap(), vec![vec![6, 6, 0]]);
        assert_eq!(lat(2, &[]), IntegerLattice::zero(2));
        assert!(matches!(IntegerLattice::from_rows(2, &[vec![1, 2, 3]]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn gim_srin_first_lattice_is_a_plus_b_divisible_by_four() {
        let l = gim_srin_s1();
        for a in -20i64..=20 {
            for b in -20i64..=20 {
                assert_eq!(l.contains(&[a, b, 0]).unwrap(), (a + b) % 4 == 0, "({a},{b})");
                assert!(!l.contains(&[a, b, 1]).unwrap());
            }
        }
    }

    #[test]
    fn membership_examples() {
        assert!(gim_srin_s1().contains(&[6, 6, 0]).unwrap());
        assert!(gim_srin_s1().contains(&[0, 4, 0]).unwrap());
        assert!(lat(2, &[vec![2, 2]]).contains(&[0, 0]).unwrap());
        assert!(!lat(2, &[vec![2, 2]]).contains(&[1, 1]).unwrap());
        assert!(lat(2, &[vec![2, 2]]).contains(&[1]).is_err());
    }

    #[test]
    fn intersection_examples() {
        let i = gim_srin_s1().intersect(&gim_srin_s2()).unwrap();
        assert_eq!(i, lat(3, &[vec![6, 6, 0]]));
        let l = gim_srin_s2();
        assert_eq!(l.intersect(&l).unwrap(), l);
        assert_eq!(lat(1, &[vec![2]]).intersect(&lat(1, &[vec![3]])).unwrap(), lat(1, &[vec![6]]));
    }

    #[test]
    fn saturation_examples() {
        let z2 = IntegerLattice::full(2);
        assert_eq!(saturation(&z2, &lat(2, &[vec![2, 2]])).unwrap(), lat(2, &[vec![1, 1]]));
        let sat = lat(2, &[vec![1, 1]]);
        assert_eq!(saturation(&z2, &sat).unwrap(), sat);

        let ambient = lat(2, &[vec![2, 0], vec![0, 3]]);
        let l = lat(2, &[vec![12, -12]]);
        assert_eq!(saturation(&ambient, &l).unwrap(), lat(2, &[vec![6, -6]]));

        let outside = lat(2, &[vec![1, 0]]);
        assert!(matches!(saturation(&ambient, &outside), Err(Error::ContainmentViolation(_))));
    }

    #[test]
    fn quotient_examples() {
        let q = quotient_structure(&IntegerLattice::full(2), &lat(2, &[vec![1, -1]])).unwrap();
        assert_eq!(q.free_rank, 1);
        assert!(q.torsion_invariants.is_empty());

        let q = quotient_structure(&IntegerLattice::full(1), &lat(1, &[vec![2]])).unwrap();
        assert_eq!(q.free_rank, 0);
        assert_eq!(q.torsion_invariants, vec![BigInt::from(2)]);

        let ambient = lat(2, &[vec![2, 0], vec![0, 3]]);
        let q = quotient_structure(&ambient, &lat(2, &[vec![12, -12]])).unwrap();
        assert_eq!(q.free_rank, 1);
        assert_eq!(q.torsion_invariants, vec![BigInt::from(2)]);
        let (g, order) = &q.torsion_generators[0];
        assert_eq!(order, &BigInt::from(2));
        let doubled: Vec<BigInt> = g.iter().map(|x| x * 2).collect();
        assert!(lat(2, &[vec![12, -12]]).contains_big(&doubled).unwrap());
        assert!(!lat(2, &[vec![12, -12]]).contains_big(g).unwrap());
    }

    #[test]
    fn projection_kills_exactly_the_saturation() {
        let ambient = lat(2, &[vec![2, 0], vec![0, 3]]);
        let l = lat(2, &[vec![12, -12]]);
        let q = quotient_structure(&ambient, &l).unwrap();
        let sat = saturation(&ambient, &l).unwrap();
        for a in -6i64..=6 {
            for b in -6i64..=6 {
                let x = [2 * a, 3 * b];
                let p = q.project_i64(&x).unwrap();
                assert_eq!(p.iter().all(|&v| v == 0), sat.contains(&x).unwrap());
            }
        }
    }
}
