//! Generalized-commutator counting invariants p_{i1..ir}, power-sum
//! coefficient tensors, Newton conversion between power sums and
//! elementary symmetric data, and the constructive reconstruction of the
//! factored Frobenius polynomial from the triple invariants.
//!
//! Two counting conventions coexist in the source material and differ by a
//! factor of the group order: the pair-count ("partition") convention
//! normalizes to p = Tr(A_{i1} ... A_{ir}), the commutator-pair
//! ("ordinary") convention to p = |G| Tr(...). Both constants are pinned
//! here and re-verified against element-level brute force in the tests
//! and the acceptance suite rather than trusted.

use crate::class_algebra::RegularRep;
use crate::error::{Error, Result};
use crate::group::{ClassData, FiniteGroup};
use crate::matrix::{QMat, ZMat};
use crate::modp::{invm, mulm, MatP};
use crate::partition::{solution_count, GoodPartition, StructTensor};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// Pair counts weighted per representative; p = Tr(prod A).
    Partition,
    /// (s, r) commutator-pair counts over G x G; p = |G| Tr(prod A).
    Ordinary,
}

impl Convention {
    pub fn tag(&self) -> &'static str {
        match self {
            Convention::Partition => "partition",
            Convention::Ordinary => "ordinary",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CommutatorCounts {
    pub convention: Convention,
    pub n: usize,
    pub p1: Vec<BigInt>,
    pub p2: Vec<Vec<BigInt>>,
    pub p3: Vec<Vec<Vec<BigInt>>>,
    /// The verified constant linking counts to traces: counts = constant *
    /// Tr(prod A). 1 for the partition convention, |G| for ordinary.
    pub trace_constant: BigInt,
}

/// Per-element commutator weight of each block: for the partition
/// convention, the pair count of the block normalized by the block size;
/// for the ordinary convention, the number of (s, r) in G x G with
/// s^-1 r^-1 s r landing on a fixed element.
fn block_weights(
    part: &GoodPartition,
    tensor: &StructTensor,
    convention: Convention,
) -> Vec<BigRational> {
    let n = part.n_blocks();
    let ell = BigInt::from(part.covered_order);
    (0..n)
        .map(|j| {
            let mut acc = BigRational::zero();
            for i in 0..n {
                let cnt = solution_count(part, tensor, &[j, i, part.inverse_block[i]]);
                acc += BigRational::new(
                    cnt,
                    BigInt::from(part.sizes[j]) * BigInt::from(part.sizes[i]),
                );
            }
            match convention {
                Convention::Partition => acc,
                Convention::Ordinary => acc * BigRational::from_integer(ell.clone()),
            }
        })
        .collect()
}

/// Counts computed from the tensor: p_{i1..ir} = sum_j l_{j' i1..ir} *
/// weight_j (the solution count times the per-element weight, summed over
/// the landing block), asserted integral and cross-checked against the
/// trace constants.
pub fn commutator_counts(
    part: &GoodPartition,
    tensor: &StructTensor,
    rep: &RegularRep,
    convention: Convention,
) -> Result<CommutatorCounts> {
    let n = part.n_blocks();
    let weights = block_weights(part, tensor, convention);
    let count_for = |indices: &[usize]| -> Result<BigInt> {
        let mut acc = BigRational::zero();
        for j in 0..n {
            if weights[j].is_zero() {
                continue;
            }
            let mut idx = vec![part.inverse_block[j]];
            idx.extend_from_slice(indices);
            let cnt = solution_count(part, tensor, &idx);
            if cnt.is_zero() {
                continue;
            }
            acc += BigRational::from_integer(cnt) * &weights[j];
        }
        if !acc.is_integer() {
            return Err(Error::VerificationFailed(format!(
                "commutator count for {:?} is not an integer: {}",
                indices, acc
            )));
        }
        Ok(acc.to_integer())
    };
    let mut p1 = Vec::with_capacity(n);
    for i in 0..n {
        p1.push(count_for(&[i])?);
    }
    let mut p2 = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let v = count_for(&[i, j])?;
            p2[i][j] = v.clone();
            p2[j][i] = v;
        }
    }
    let mut p3 = vec![vec![vec![BigInt::zero(); n]; n]; n];
    for i in 0..n {
        for j in i..n {
            for l in j..n {
                let v = count_for(&[i, j, l])?;
                for perm in [[i, j, l], [i, l, j], [j, i, l], [j, l, i], [l, i, j], [l, j, i]] {
                    p3[perm[0]][perm[1]][perm[2]] = v.clone();
                }
            }
        }
    }
    let trace_constant = match convention {
        Convention::Partition => BigInt::one(),
        Convention::Ordinary => BigInt::from(part.covered_order),
    };
    // pin the constant against the traces
    for i in 0..n {
        if p1[i] != rep.matrices[i].trace() * &trace_constant {
            return Err(Error::VerificationFailed(format!(
                "p_{} does not equal {} * Tr(A): the convention constant broke",
                i, trace_constant
            )));
        }
        for j in 0..n {
            let t = rep.matrices[i].mul(&rep.matrices[j]).trace();
            if p2[i][j] != t * &trace_constant {
                return Err(Error::VerificationFailed(format!(
                    "p_({}, {}) does not equal {} * Tr(A A)",
                    i, j, trace_constant
                )));
            }
        }
    }
    for i in 0..n {
        let ai = &rep.matrices[i];
        for j in i..n {
            let prod = ai.mul(&rep.matrices[j]);
            for l in j..n {
                let t = prod.mul(&rep.matrices[l]).trace();
                if p3[i][j][l] != t * &trace_constant {
                    return Err(Error::VerificationFailed(format!(
                        "p_({}, {}, {}) does not equal {} * Tr(A A A)",
                        i, j, l, trace_constant
                    )));
                }
            }
        }
    }
    Ok(CommutatorCounts { convention, n, p1, p2, p3, trace_constant })
}

/// Element-level pair weights: each pair (x, y) with x in P_i and y in
/// P_{i'} contributes 1/l_i at the product xy.
fn brute_pair_weights(
    g: &FiniteGroup,
    classes: &ClassData,
    part: &GoodPartition,
) -> Vec<BigRational> {
    let ell = g.order();
    let mut w = vec![BigRational::zero(); ell];
    for i in 0..part.n_blocks() {
        let mut hist = vec![0u64; ell];
        for &ci in &part.blocks[i] {
            for &x in &classes.members[ci] {
                for &cj in &part.blocks[part.inverse_block[i]] {
                    for &y in &classes.members[cj] {
                        hist[g.mul(x as usize, y as usize)] += 1;
                    }
                }
            }
        }
        let size = BigInt::from(part.sizes[i]);
        for (x, &h) in hist.iter().enumerate() {
            if h != 0 {
                w[x] += BigRational::new(BigInt::from(h), size.clone());
            }
        }
    }
    w
}

/// Element-level brute force, used as the oracle for the tensor-derived
/// counts on groups of order <= 200.
pub fn brute_counts(
    g: &FiniteGroup,
    classes: &ClassData,
    part: &GoodPartition,
    convention: Convention,
    max_r: usize,
) -> Result<CommutatorCounts> {
    let ell = g.order();
    let n = part.n_blocks();
    let singleton_blocks = part.blocks.iter().all(|b| b.len() == 1);
    let weights: Vec<BigRational> = match convention {
        // the literal (s, r)-pair count is a class-level quantity; on
        // coarser partitions the ordinary convention is the |G|-scaled
        // pair weight
        Convention::Ordinary if singleton_blocks => {
            let mut w = vec![0u64; ell];
            for s in 0..ell {
                for r in 0..ell {
                    let c = g.mul(g.mul(g.inv_of(s), g.inv_of(r)), g.mul(s, r));
                    w[c] += 1;
                }
            }
            w.into_iter().map(|v| BigRational::from_integer(BigInt::from(v))).collect()
        }
        Convention::Ordinary => {
            let base = brute_pair_weights(g, classes, part);
            let scale = BigRational::from_integer(BigInt::from(part.covered_order));
            base.into_iter().map(|v| v * &scale).collect()
        }
        Convention::Partition => brute_pair_weights(g, classes, part),
    };
    let block_of_elem: Vec<Option<usize>> = (0..ell)
        .map(|x| part.block_of[classes.class_of[x] as usize])
        .collect();
    let elems_of_block: Vec<Vec<usize>> = (0..n)
        .map(|b| (0..ell).filter(|&x| block_of_elem[x] == Some(b)).collect())
        .collect();

    let finish = |acc: BigRational, what: &str| -> Result<BigInt> {
        if !acc.is_integer() {
            return Err(Error::VerificationFailed(format!(
                "brute-force count {} is not an integer: {}",
                what, acc
            )));
        }
        Ok(acc.to_integer())
    };

    let mut p1 = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = BigRational::zero();
        for &x in &elems_of_block[i] {
            acc += &weights[x];
        }
        p1.push(finish(acc, "p1")?);
    }
    let mut p2 = vec![vec![BigInt::zero(); n]; n];
    if max_r >= 2 {
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigRational::zero();
                for &x in &elems_of_block[i] {
                    for &y in &elems_of_block[j] {
                        acc += &weights[g.mul(x, y)];
                    }
                }
                p2[i][j] = finish(acc, "p2")?;
            }
        }
    }
    let mut p3 = vec![vec![vec![BigInt::zero(); n]; n]; n];
    if max_r >= 3 {
        for i in 0..n {
            for j in 0..n {
                let mut partial = vec![0u64; ell];
                for &x in &elems_of_block[i] {
                    for &y in &elems_of_block[j] {
                        partial[g.mul(x, y)] += 1;
                    }
                }
                for l in 0..n {
                    let mut acc = BigRational::zero();
                    for xy in 0..ell {
                        if partial[xy] == 0 {
                            continue;
                        }
                        let factor = BigRational::from_integer(BigInt::from(partial[xy]));
                        for &z in &elems_of_block[l] {
                            acc += &weights[g.mul(xy, z)] * &factor;
                        }
                    }
                    p3[i][j][l] = finish(acc, "p3")?;
                }
            }
        }
    }
    let trace_constant = match convention {
        Convention::Partition => BigInt::one(),
        Convention::Ordinary => BigInt::from(part.covered_order),
    };
    Ok(CommutatorCounts { convention, n, p1, p2, p3, trace_constant })
}

/// Per-element commutator multiplicity of a block, by the closed form
/// sum_j |G| l_{ijj'} / (l_i l_j).
pub fn class_commutator_multiplicity(
    part: &GoodPartition,
    tensor: &StructTensor,
    i: usize,
) -> Result<BigInt> {
    let n = part.n_blocks();
    let ell = BigInt::from(part.covered_order);
    let mut acc = BigRational::zero();
    for j in 0..n {
        let cnt = solution_count(part, tensor, &[i, j, part.inverse_block[j]]);
        acc += BigRational::new(
            &ell * cnt,
            BigInt::from(part.sizes[i]) * BigInt::from(part.sizes[j]),
        );
    }
    if !acc.is_integer() {
        return Err(Error::VerificationFailed(
            "per-element commutator multiplicity is not an integer".into(),
        ));
    }
    Ok(acc.to_integer())
}

/// Exact power-sum coefficient: the coefficient of x_{i1} ... x_{ir} in
/// s_r(gamma_1(x), ..., gamma_n(x)) is Tr(A_{i1} ... A_{ir}).
pub fn power_sum_coefficient(rep: &RegularRep, indices: &[usize]) -> BigInt {
    let n = rep.n;
    let mut acc = ZMat::identity(n);
    for &i in indices {
        acc = acc.mul(&rep.matrices[i]);
    }
    acc.trace()
}

/// Newton's identities: from power sums s_1..s_k to elementary symmetric
/// values e_1..e_k, exactly over the rationals.
pub fn newton_elementary(power_sums: &[BigRational]) -> Vec<BigRational> {
    let k = power_sums.len();
    let mut e: Vec<BigRational> = Vec::with_capacity(k + 1);
    e.push(BigRational::one());
    for l in 1..=k {
        let mut acc = BigRational::zero();
        for i in 1..=l {
            let term = &e[l - i] * &power_sums[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / BigRational::from_integer(BigInt::from(l as i64)));
    }
    e.remove(0);
    e
}

/// Inverse direction, for round-trip checks: from e_1..e_k to s_1..s_k.
pub fn newton_power_sums(elementary: &[BigRational]) -> Vec<BigRational> {
    let k = elementary.len();
    let e = |i: usize| -> BigRational {
        if i == 0 {
            BigRational::one()
        } else {
            elementary[i - 1].clone()
        }
    };
    let mut s: Vec<BigRational> = Vec::with_capacity(k);
    for l in 1..=k {
        let mut acc = e(l) * BigRational::from_integer(BigInt::from(l as i64));
        if l % 2 == 0 {
            acc = -acc;
        }
        for i in 1..l {
            let term = e(l - i) * &s[i - 1];
            if (l - 1 - i) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        s.push(acc);
    }
    s
}

// ---------------------------------------------------------------------------
// reconstruction from the triple invariants
// ---------------------------------------------------------------------------

/// The factored Frobenius polynomial recovered from p2 and p3: the forms
/// mod p together with their degree products, sorted for multiset
/// comparison against the directly computed polynomial.
#[derive(Clone, Debug)]
pub struct ReconstructedForms {
    pub p: u64,
    pub zeta: u64,
    /// columns\[t]\[i] = lambda_{it} mod p, sorted.
    pub columns: Vec<Vec<u64>>,
    /// d\[t] = f_t e_t per column, aligned with `columns`.
    pub d: Vec<u64>,
}

/// Executable form of the determination claim: with P_{ij} =
/// sum_t lambda_{it} lambda_{jt} and T_{ijl} recovered from the counts
/// (after dividing by the verified trace constant), the matrices
/// M_l = T_l P^{-1} commute with common eigencolumns equal to the lambda
/// rows; the usual mod-p splitting machinery recovers the forms.
pub fn reconstruct_from_triples(
    counts: &CommutatorCounts,
    part: &GoodPartition,
    m_exponent: u64,
) -> Result<ReconstructedForms> {
    let n = counts.n;
    let constant = BigRational::from_integer(counts.trace_constant.clone());
    let to_rat = |v: &BigInt| BigRational::from_integer(v.clone()) / &constant;
    let p_rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| to_rat(&counts.p2[i][j])).collect())
        .collect();
    let p_mat = QMat::from_rows(p_rows);
    let p_inv = p_mat
        .inverse()
        .ok_or_else(|| Error::Singular("the pair-count matrix P is singular".into()))?;
    let mut m_mats_rat = Vec::with_capacity(n);
    for l in 0..n {
        let t_rows: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| to_rat(&counts.p3[i][j][l])).collect())
            .collect();
        m_mats_rat.push(QMat::from_rows(t_rows).mul(&p_inv));
    }
    let reduce = |v: &BigRational, p: u64| -> Option<u64> {
        use num_integer::Integer;
        let den = v.denom().mod_floor(&BigInt::from(p)).to_u64()?;
        if den == 0 {
            return None;
        }
        let num = v.numer().mod_floor(&BigInt::from(p)).to_u64()?;
        Some(mulm(num, invm(den, p), p))
    };
    let ell = part.covered_order;
    let mut lower = ell.max(n as u64);
    'prime: for _attempt in 0..8 {
        let p = crate::arith::prime_one_mod(m_exponent, lower);
        lower = p;
        let zeta = crate::modp::element_of_order(m_exponent, p);
        let mut mats = Vec::with_capacity(n);
        for mq in &m_mats_rat {
            let mut mp = MatP::zero(n, n);
            for i in 0..n {
                for j in 0..n {
                    match reduce(mq.at(i, j), p) {
                        Some(v) => mp.set(i, j, v),
                        None => continue 'prime,
                    }
                }
            }
            mats.push(mp);
        }
        let columns = match crate::modp::simultaneous_eigencolumns(&mats, p, 0x7ec0) {
            Ok(cols) => cols,
            Err(_) => continue 'prime,
        };
        if columns.len() != n {
            continue 'prime;
        }
        let mut d = Vec::with_capacity(n);
        for col in &columns {
            let mut s = 0u64;
            for gamma in 0..n {
                let t1 = to_rat(&counts.p1[gamma]);
                let Some(pg) = reduce(&t1, p) else { continue 'prime };
                s = crate::modp::addm(
                    s,
                    mulm(mulm(col[gamma], pg, p), invm(part.sizes[gamma] % p, p), p),
                    p,
                );
            }
            if s == 0 {
                continue 'prime;
            }
            let dt = mulm(ell % p, invm(s, p), p);
            if dt == 0 || dt > ell {
                continue 'prime;
            }
            d.push(dt);
        }
        return Ok(ReconstructedForms { p, zeta, columns, d });
    }
    Err(Error::Singular("reconstruction failed to find a usable prime".into()))
}

/// Reduce a directly computed factored Frobenius polynomial at the
/// reconstruction's prime, for multiset comparison.
pub fn reduce_forms_at(
    forms: &crate::polynomials::LinearFormProduct,
    p: u64,
    zeta: u64,
) -> Vec<(Vec<u64>, u64)> {
    let mut rows: Vec<(Vec<u64>, u64)> = (0..forms.forms.len())
        .map(|t| {
            (
                forms.forms[t].iter().map(|v| v.eval_modp(p, zeta)).collect(),
                forms.mults[t],
            )
        })
        .collect();
    rows.sort();
    rows
}
