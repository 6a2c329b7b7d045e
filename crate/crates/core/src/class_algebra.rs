//! Exact linear algebra over the partition algebra: regular-representation
//! matrices, the Gram matrix with its semisimplicity verdict, characteristic
//! polynomials of elements, and the generalized Casimir matrix.

use crate::error::{Error, Result};
use crate::matrix::{QMat, ZMat};
use crate::partition::{GoodPartition, StructTensor};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// The matrices A_j with (A_j)_{l,i} = a_{lij}, acting on coordinate
/// columns of algebra elements. They commute pairwise; the identity
/// coefficients act as the identity map.
#[derive(Clone, Debug)]
pub struct RegularRep {
    pub n: usize,
    pub matrices: Vec<ZMat>,
    /// Same matrices with i64 entries, kept for modular reduction.
    pub raw: Vec<Vec<i64>>,
}

pub fn regular_representation(tensor: &StructTensor, part: &GoodPartition) -> Result<RegularRep> {
    let n = tensor.n;
    let mut matrices = Vec::with_capacity(n);
    let mut raw = Vec::with_capacity(n);
    for j in 0..n {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|l| (0..n).map(|i| tensor.at(l, i, j)).collect())
            .collect();
        raw.push(rows.concat());
        matrices.push(ZMat::from_i64_rows(&rows));
    }
    // commutativity of the algebra carries over to the matrices
    for i in 0..n {
        for j in i + 1..n {
            if matrices[i].mul(&matrices[j]) != matrices[j].mul(&matrices[i]) {
                return Err(Error::VerificationFailed(format!(
                    "regular representation matrices {} and {} do not commute",
                    i, j
                )));
            }
        }
    }
    // identity coefficients act as the identity map
    let mut id_action = ZMat::zero(n);
    let mut denom = BigInt::one();
    for c in &part.identity_coeffs {
        denom = num_integer::Integer::lcm(&denom, c.denom());
    }
    for (i, c) in part.identity_coeffs.iter().enumerate() {
        let scaled = c * BigRational::from_integer(denom.clone());
        debug_assert!(scaled.is_integer());
        id_action = id_action.add(&matrices[i].scale(&scaled.to_integer()));
    }
    if id_action != ZMat::identity(n).scale(&denom) {
        return Err(Error::VerificationFailed(
            "identity coefficients do not act as the identity map".into(),
        ));
    }
    Ok(RegularRep { n, matrices, raw })
}

/// Gram matrix p_{ij} = Tr(A_i A_j) with its exact determinant. The
/// partition algebra is semisimple exactly when the determinant is
/// nonzero, and over characteristic zero every good partition must pass.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    pub n: usize,
    pub p: ZMat,
    pub det: BigInt,
    /// p_i = Tr(A_i); equals the weighted solution-count sum_t l_{itt'}/l_t.
    pub p_vec: Vec<BigInt>,
    pub semisimple: bool,
}

pub fn gram_matrix(rep: &RegularRep) -> Result<GramMatrix> {
    let n = rep.n;
    let mut p = ZMat::zero(n);
    for i in 0..n {
        let ai = &rep.matrices[i];
        for j in i..n {
            let prod = ai.mul(&rep.matrices[j]);
            let t = prod.trace();
            p.set(i, j, t.clone());
            p.set(j, i, t);
        }
    }
    let det = p.det();
    let p_vec: Vec<BigInt> = rep.matrices.iter().map(|m| m.trace()).collect();
    let semisimple = !det.is_zero();
    if !semisimple {
        return Err(Error::VerificationFailed(format!(
            "Gram determinant vanished for an n={} partition algebra; good \
             partitions are semisimple over characteristic zero, so the \
             inputs are corrupt. Gram matrix: {:?}",
            n, p.data
        )));
    }
    Ok(GramMatrix { n, p, det, p_vec, semisimple })
}

/// Exact characteristic polynomial (ascending, monic) of sum_i c_i A_i.
pub fn char_poly_of_element(rep: &RegularRep, coeffs: &[BigRational]) -> Vec<BigRational> {
    assert_eq!(coeffs.len(), rep.n);
    let n = rep.n;
    let mut rows = vec![vec![BigRational::zero(); n]; n];
    for (idx, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for l in 0..n {
            for i in 0..n {
                let term = c * BigRational::from_integer(rep.matrices[idx].at(l, i).clone());
                rows[l][i] += term;
            }
        }
    }
    QMat::from_rows(rows).charpoly()
}

/// The generalized Casimir matrix K = sum_i A_i A_{i'} / (l_i * L) where L
/// is the covered order, together with its exact characteristic
/// polynomial. Its roots are the reciprocals 1/(f_t e_t).
#[derive(Clone, Debug)]
pub struct CasimirData {
    pub matrix: QMat,
    pub charpoly: Vec<BigRational>,
}

pub fn casimir_matrix(rep: &RegularRep, part: &GoodPartition) -> CasimirData {
    let n = rep.n;
    let ell = BigInt::from(part.covered_order);
    let mut rows = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let prod = rep.matrices[i].mul(&rep.matrices[part.inverse_block[i]]);
        let denom = BigRational::from_integer(BigInt::from(part.sizes[i]) * &ell);
        for l in 0..n {
            for c in 0..n {
                rows[l][c] += BigRational::from_integer(prod.at(l, c).clone()) / &denom;
            }
        }
    }
    let matrix = QMat::from_rows(rows);
    let charpoly = matrix.charpoly();
    CasimirData { matrix, charpoly }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{conjugacy_classes, load_group, GroupSource, DEFAULT_ORDER_BOUND};
    use crate::matrix::eval_poly_at_matrix;
    use crate::partition::{build_partition, structure_constants, solution_count, PartitionKind};

    fn setup(spec: &str, kind: PartitionKind) -> (RegularRep, GoodPartition, StructTensor) {
        let g = load_group(&GroupSource::Builtin(spec.into()), DEFAULT_ORDER_BOUND).unwrap();
        let c = conjugacy_classes(&g);
        let p = build_partition(&g, &c, &kind).unwrap();
        let t = structure_constants(&g, &c, &p).unwrap();
        let rep = regular_representation(&t, &p).unwrap();
        (rep, p, t)
    }

    #[test]
    fn z2_regular_rep() {
        let (rep, _, _) = setup("Zn:2", PartitionKind::Trivial);
        assert_eq!(rep.matrices[0], ZMat::identity(2));
        assert_eq!(rep.matrices[1], ZMat::from_i64_rows(&[vec![0, 1], vec![1, 0]]));
    }

    #[test]
    fn s3_regular_rep_and_gram() {
        let g = load_group(&GroupSource::Builtin("Sn:3".into()), DEFAULT_ORDER_BOUND).unwrap();
        let c = conjugacy_classes(&g);
        let p = build_partition(&g, &c, &PartitionKind::Trivial).unwrap();
        let t = structure_constants(&g, &c, &p).unwrap();
        let rep = regular_representation(&t, &p).unwrap();
        let tr = (0..3).find(|&i| c.rep_orders[i] == 2).unwrap();
        let cy = (0..3).find(|&i| c.rep_orders[i] == 3).unwrap();
        // A_tr read off a_{l,i,tr}: row l, column i
        let a_tr = &rep.matrices[tr];
        for l in 0..3 {
            for i in 0..3 {
                assert_eq!(a_tr.at(l, i), &BigInt::from(t.at(l, i, tr)));
            }
        }
        let gram = gram_matrix(&rep).unwrap();
        assert!(gram.semisimple);
        assert_eq!(gram.p.at(0, 0), &BigInt::from(3));
        assert_eq!(gram.p.at(tr, tr), &BigInt::from(18));
        assert_eq!(gram.p.at(cy, cy), &BigInt::from(9));
        assert!(!gram.det.is_zero());
        // p_vec equals the weighted solution-count sums
        for i in 0..3 {
            let mut weighted = BigRational::zero();
            for tt in 0..3 {
                let cnt = solution_count(&p, &t, &[i, tt, p.inverse_block[tt]]);
                weighted += BigRational::new(cnt, BigInt::from(p.sizes[tt]));
            }
            assert!(weighted.is_integer());
            assert_eq!(weighted.to_integer(), gram.p_vec[i]);
        }
    }

    #[test]
    fn z5_rational_gram_example() {
        let (rep, _, _) = setup("Zn:5", PartitionKind::Rational);
        let gram = gram_matrix(&rep).unwrap();
        // A_2 = [[0,4],[1,3]]; direct traces give p = [[2,3],[3,17]]
        assert_eq!(gram.p.at(0, 0), &BigInt::from(2));
        assert_eq!(gram.p.at(1, 1), &BigInt::from(17));
        assert_eq!(gram.p.at(0, 1), &BigInt::from(3));
        assert_eq!(gram.det, BigInt::from(25));
    }

    #[test]
    fn charpoly_examples_and_cayley_hamilton() {
        let (rep, part, _) = setup("Sn:3", PartitionKind::Trivial);
        let g = load_group(&GroupSource::Builtin("Sn:3".into()), DEFAULT_ORDER_BOUND).unwrap();
        let c = conjugacy_classes(&g);
        let tr = (0..3).find(|&i| c.rep_orders[i] == 2).unwrap();
        // identity coefficients -> (x - 1)^n
        let cp = char_poly_of_element(&rep, &part.identity_coeffs);
        let minus_one = BigRational::from_integer(BigInt::from(-1));
        let expect = {
            // (x-1)^3 = x^3 - 3x^2 + 3x - 1
            vec![
                minus_one.clone(),
                BigRational::from_integer(BigInt::from(3)),
                BigRational::from_integer(BigInt::from(-3)),
                BigRational::one(),
            ]
        };
        assert_eq!(cp, expect);
        // transposition block: x^3 - 9x
        let mut coeffs = vec![BigRational::zero(); 3];
        coeffs[tr] = BigRational::one();
        let cp = char_poly_of_element(&rep, &coeffs);
        assert_eq!(cp[0], BigRational::zero());
        assert_eq!(cp[1], BigRational::from_integer(BigInt::from(-9)));
        assert_eq!(cp[2], BigRational::zero());
        // zero vector -> x^n
        let cp = char_poly_of_element(&rep, &vec![BigRational::zero(); 3]);
        assert!(cp[..3].iter().all(|v| v.is_zero()));
        // Cayley-Hamilton on an integer element: A_tr annihilates its charpoly
        let int_coeffs: Vec<BigInt> = vec![BigInt::zero(), BigInt::from(-9), BigInt::zero(), BigInt::one()];
        let z = eval_poly_at_matrix(&int_coeffs, &rep.matrices[tr]);
        assert!(z.data.iter().all(|v| v.is_zero()));
    }

    #[test]
    fn casimir_s3() {
        let (rep, part, _) = setup("Sn:3", PartitionKind::Trivial);
        let cas = casimir_matrix(&rep, &part);
        // trace = 1/2 + 1 + 3/4 = 9/4; charpoly roots {1, 1, 1/4}
        let tr: BigRational = (0..3).map(|i| cas.matrix.at(i, i).clone()).sum();
        assert_eq!(tr, BigRational::new(BigInt::from(9), BigInt::from(4)));
        // (x-1)^2 (x-1/4) = x^3 - 9/4 x^2 + 3/2 x - 1/4
        assert_eq!(cas.charpoly[0], BigRational::new(BigInt::from(-1), BigInt::from(4)));
        assert_eq!(cas.charpoly[1], BigRational::new(BigInt::from(3), BigInt::from(2)));
        assert_eq!(cas.charpoly[2], BigRational::new(BigInt::from(-9), BigInt::from(4)));
    }

    #[test]
    fn casimir_abelian_is_identity() {
        let (rep, part, _) = setup("Zn:2", PartitionKind::Trivial);
        let cas = casimir_matrix(&rep, &part);
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { BigRational::one() } else { BigRational::zero() };
                assert_eq!(cas.matrix.at(i, j), &expect);
            }
        }
    }

    #[test]
    fn casimir_z5_rational_roots() {
        let (rep, part, _) = setup("Zn:5", PartitionKind::Rational);
        let cas = casimir_matrix(&rep, &part);
        // roots 1 and 1/4: charpoly (x-1)(x-1/4) = x^2 - 5/4 x + 1/4
        assert_eq!(cas.charpoly[0], BigRational::new(BigInt::from(1), BigInt::from(4)));
        assert_eq!(cas.charpoly[1], BigRational::new(BigInt::from(-5), BigInt::from(4)));
    }

    #[test]
    fn gram_eq5_family_symmetries() {
        // p_{ij'} = p_{ji'} = p_{i'j} = p_{j'i} on a group with non-real classes
        let g = load_group(&GroupSource::Builtin("Zn:7".into()), DEFAULT_ORDER_BOUND).unwrap();
        let c = conjugacy_classes(&g);
        let p = build_partition(&g, &c, &PartitionKind::Trivial).unwrap();
        let t = structure_constants(&g, &c, &p).unwrap();
        let rep = regular_representation(&t, &p).unwrap();
        let gram = gram_matrix(&rep).unwrap();
        let n = p.n_blocks();
        for i in 0..n {
            for j in 0..n {
                let ip = p.inverse_block[i];
                let jp = p.inverse_block[j];
                assert_eq!(gram.p.at(i, jp), gram.p.at(j, ip));
                assert_eq!(gram.p.at(i, jp), gram.p.at(ip, j));
                assert_eq!(gram.p.at(i, jp), gram.p.at(jp, i));
            }
        }
    }
}
