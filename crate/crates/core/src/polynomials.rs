//! The Frobenius polynomial as a factored product of linear forms, the
//! degree polynomial over two independent routes, p'-parts, equality of
//! Frobenius polynomials up to a variable permutation, reconstruction of
//! the structure tensor from the factored form, collapsed
//! group-determinant spot checks, and the normal-subgroup lattice read off
//! closed class subsets.
//!
//! The Frobenius polynomial is never expanded into monomials; every use
//! here needs only the factored or evaluated form.

use crate::arith::SplitMix64;
use crate::characters::{degrees_and_multiplicities, eigen_system_mod_p, PartitionTable};
use crate::class_algebra::{casimir_matrix, GramMatrix, RegularRep};
use crate::cyclotomic::Cyc;
use crate::error::{Error, Result};
use crate::group::{ClassData, FiniteGroup};
use crate::matrix::ZMat;
use crate::modp::{mulm, MatP};
use crate::partition::{GoodPartition, StructTensor};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

// ---------------------------------------------------------------------------
// Frobenius polynomial
// ---------------------------------------------------------------------------

/// The Frobenius polynomial of a partition algebra, kept factored: a
/// multiset of linear forms gamma_t(x) = sum_i lambda_{it} x_i with
/// multiplicities m_t = f_t e_t.
#[derive(Clone, Debug)]
pub struct LinearFormProduct {
    pub n: usize,
    /// Cyclotomic exponent of the coefficients.
    pub m: u64,
    /// forms\[t]\[i] = lambda_{it}.
    pub forms: Vec<Vec<Cyc>>,
    pub mults: Vec<u64>,
    /// Covered order; equals the multiplicity sum exactly when the
    /// identity block is the singleton identity class.
    pub covered_order: u64,
    pub shadow_p: u64,
    pub shadow_zeta: u64,
    pub shadow: Vec<Vec<u64>>,
}

impl LinearFormProduct {
    /// gamma_t evaluated at an integer point.
    pub fn eval_form(&self, t: usize, x: &[i64]) -> Cyc {
        let mut acc = Cyc::zero(self.m as usize);
        for (i, &xi) in x.iter().enumerate() {
            if xi != 0 {
                acc = acc.add(&self.forms[t][i].scale_int(xi));
            }
        }
        acc
    }

    /// The full product prod_t gamma_t(x)^{m_t} at an integer point; a
    /// rational integer by the collapsed-determinant identity.
    pub fn eval_product(&self, x: &[i64]) -> Result<BigInt> {
        let mut acc = Cyc::one(self.m as usize);
        for t in 0..self.forms.len() {
            let v = self.eval_form(t, x);
            for _ in 0..self.mults[t] {
                acc = acc.mul(&v);
            }
        }
        acc.as_integer().ok_or_else(|| {
            Error::VerificationFailed("form product is not a rational integer".into())
        })
    }
}

pub fn frobenius_polynomial(pt: &PartitionTable) -> Result<LinearFormProduct> {
    let n = pt.n;
    let mut shadow: Vec<Vec<u64>> = Vec::with_capacity(n);
    for t in 0..n {
        let row: Vec<u64> = (0..n)
            .map(|i| pt.lambda[t][i].eval_modp(pt.shadow_p, pt.shadow_zeta))
            .collect();
        if shadow.contains(&row) {
            return Err(Error::VerificationFailed(
                "duplicate linear forms contradict semisimplicity".into(),
            ));
        }
        shadow.push(row);
    }
    Ok(LinearFormProduct {
        n,
        m: pt.m,
        forms: pt.lambda.clone(),
        mults: pt.d.clone(),
        covered_order: pt.covered_order,
        shadow_p: pt.shadow_p,
        shadow_zeta: pt.shadow_zeta,
        shadow,
    })
}

// ---------------------------------------------------------------------------
// degree polynomial
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreePolynomial {
    /// Monic, ascending integer coefficients.
    pub coeffs: Vec<BigInt>,
    /// Roots d_t = f_t e_t, ascending with multiplicity.
    pub roots: Vec<u64>,
    pub route: &'static str,
}

impl DegreePolynomial {
    /// Factored rendering like `(x-1)^2*(x-4)`.
    pub fn render_factored(&self) -> String {
        let mut runs: Vec<(u64, usize)> = Vec::new();
        for &r in &self.roots {
            match runs.last_mut() {
                Some((root, count)) if *root == r => *count += 1,
                _ => runs.push((r, 1)),
            }
        }
        runs.iter()
            .map(|(root, count)| {
                if *count == 1 {
                    format!("(x-{})", root)
                } else {
                    format!("(x-{})^{}", root, count)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn render_expanded(&self, var: &str) -> String {
        render_poly(&self.coeffs, var)
    }
}

pub fn render_poly(coeffs: &[BigInt], var: &str) -> String {
    let mut parts = Vec::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = match k {
            0 => c.to_string(),
            1 => format!("{}*{}", c, var),
            _ => format!("{}*{}^{}", c, var, k),
        };
        parts.push(term);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn expand_from_roots(roots: &[u64]) -> Vec<BigInt> {
    let mut coeffs = vec![BigInt::one()];
    for &r in roots {
        let mut next = vec![BigInt::zero(); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * BigInt::from(r);
        }
        coeffs = next;
    }
    coeffs
}

fn eval_int_poly(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn synthetic_divide(coeffs: &[BigInt], root: &BigInt) -> Vec<BigInt> {
    let n = coeffs.len() - 1;
    let mut q = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for k in (0..n).rev() {
        carry = &coeffs[k + 1] + root * &carry;
        q[k] = carry.clone();
    }
    q
}

/// Route A: the characteristic polynomial of the generalized Casimir
/// matrix, coefficient-reversed and normalized monic, so the roots become
/// the degree products d_t. Needs no character data at all.
pub fn degree_polynomial_casimir(
    rep: &RegularRep,
    part: &GoodPartition,
) -> Result<DegreePolynomial> {
    let cas = casimir_matrix(rep, part);
    let n = rep.n;
    let cp = cas.charpoly;
    if cp[0].is_zero() {
        return Err(Error::VerificationFailed(
            "Casimir characteristic polynomial has zero constant term".into(),
        ));
    }
    // x^n cp(1/x), normalized monic, has roots d_t
    let rev: Vec<BigRational> = cp.iter().rev().cloned().collect();
    let lead = rev[n].clone();
    let mut int_coeffs = Vec::with_capacity(n + 1);
    for c in &rev {
        let v = c / &lead;
        if !v.is_integer() {
            return Err(Error::VerificationFailed(
                "reversed Casimir polynomial is not integral".into(),
            ));
        }
        int_coeffs.push(v.to_integer());
    }
    // extract the integer roots by synthetic division; they are positive
    // integers bounded by the covered order
    let mut roots = Vec::with_capacity(n);
    let mut rem = int_coeffs.clone();
    for candidate in 1..=part.covered_order {
        let c = BigInt::from(candidate);
        while rem.len() > 1 && eval_int_poly(&rem, &c).is_zero() {
            rem = synthetic_divide(&rem, &c);
            roots.push(candidate);
        }
        if rem.len() == 1 {
            break;
        }
    }
    if rem.len() != 1 || roots.len() != n {
        return Err(Error::VerificationFailed(
            "Casimir route degree polynomial does not split into positive \
             integer roots"
                .into(),
        ));
    }
    roots.sort_unstable();
    Ok(DegreePolynomial { coeffs: int_coeffs, roots, route: "casimir" })
}

/// Route B: prod_t (x - d_t) from the modular degree products.
pub fn degree_polynomial_from_degrees(d: &[u64]) -> DegreePolynomial {
    let mut roots = d.to_vec();
    roots.sort_unstable();
    DegreePolynomial { coeffs: expand_from_roots(&roots), roots, route: "characters" }
}

/// Both routes, with exact agreement asserted.
pub fn degree_polynomial_both(
    g: &FiniteGroup,
    rep: &RegularRep,
    part: &GoodPartition,
    gram: &GramMatrix,
    tensor: &StructTensor,
) -> Result<(DegreePolynomial, DegreePolynomial)> {
    let casimir = degree_polynomial_casimir(rep, part)?;
    let eigen = eigen_system_mod_p(g, rep, part, tensor)?;
    let deg = degrees_and_multiplicities(&eigen, gram, part)?;
    let characters = degree_polynomial_from_degrees(&deg.d);
    if casimir.coeffs != characters.coeffs {
        return Err(Error::VerificationFailed(
            "Casimir and character routes disagree on the degree polynomial".into(),
        ));
    }
    Ok((casimir, characters))
}

// ---------------------------------------------------------------------------
// p'-parts
// ---------------------------------------------------------------------------

/// D reduced mod p with the maximal x-power stripped.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct PPrimePart {
    pub p: u64,
    /// Exponent of the stripped x-power.
    pub stripped: usize,
    /// Remaining coefficients mod p, ascending, nonzero constant term.
    pub reduced: Vec<u64>,
}

impl PPrimePart {
    pub fn render(&self) -> String {
        let coeffs: Vec<BigInt> = self.reduced.iter().map(|&c| BigInt::from(c)).collect();
        if self.stripped == 0 {
            render_poly(&coeffs, "x")
        } else {
            format!("x^{} * ({})", self.stripped, render_poly(&coeffs, "x"))
        }
    }

    /// Multiplicity of the root c in the reduced part.
    pub fn root_multiplicity(&self, c: u64) -> usize {
        let mut count = 0;
        let mut poly = self.reduced.clone();
        loop {
            let mut acc = 0u64;
            for k in (0..poly.len()).rev() {
                acc = (mulm(acc, c, self.p) + poly[k]) % self.p;
            }
            if acc != 0 || poly.len() == 1 {
                break;
            }
            let mut q = vec![0u64; poly.len() - 1];
            let mut carry = 0u64;
            for k in (0..poly.len() - 1).rev() {
                carry = (poly[k + 1] + mulm(c, carry, self.p)) % self.p;
                q[k] = carry;
            }
            poly = q;
            count += 1;
        }
        count
    }
}

pub fn p_prime_part(dp: &DegreePolynomial, p: u64) -> PPrimePart {
    use num_integer::Integer;
    let modp = BigInt::from(p);
    let mut reduced: Vec<u64> = dp
        .coeffs
        .iter()
        .map(|c| c.mod_floor(&modp).to_u64().expect("fits"))
        .collect();
    let mut stripped = 0usize;
    while reduced.len() > 1 && reduced[0] == 0 {
        reduced.remove(0);
        stripped += 1;
    }
    PPrimePart { p, stripped, reduced }
}

// ---------------------------------------------------------------------------
// equality by permutation
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct PermutationVerdict {
    pub equal: bool,
    /// sigma with a_G\[l]\[i]\[j] = a_H[sigma l][sigma i][sigma j].
    pub witness: Option<Vec<usize>>,
}

/// Per-variable invariants any matching permutation must preserve.
fn block_signature(tensor: &StructTensor, part: &GoodPartition, i: usize) -> (u64, bool, i64, i64) {
    let n = tensor.n;
    let p_i: i64 = (0..n).map(|t| tensor.at(t, i, t)).sum();
    let mut p_ii = 0i64;
    for s in 0..n {
        for t in 0..n {
            p_ii += tensor.at(s, t, i) * tensor.at(t, s, i);
        }
    }
    (part.sizes[i], part.inverse_block[i] == i, p_i, p_ii)
}

/// Decide F_G(x) = F_H(x_sigma). The factored Frobenius polynomial and the
/// structure tensor determine each other, so this is exactly a tensor
/// isomorphism search with the identity block pinned; necessary conditions
/// (size multisets, multiplicity multisets, per-block invariants) prune
/// before the backtracking starts, and exact product evaluations
/// cross-check any witness found.
pub fn equal_by_permutation(
    tensor_g: &StructTensor,
    part_g: &GoodPartition,
    forms_g: &LinearFormProduct,
    tensor_h: &StructTensor,
    part_h: &GoodPartition,
    forms_h: &LinearFormProduct,
) -> Result<PermutationVerdict> {
    let n = tensor_g.n;
    if tensor_h.n != n {
        return Ok(PermutationVerdict { equal: false, witness: None });
    }
    let no = PermutationVerdict { equal: false, witness: None };
    let mut sizes_g = part_g.sizes.clone();
    let mut sizes_h = part_h.sizes.clone();
    sizes_g.sort_unstable();
    sizes_h.sort_unstable();
    if sizes_g != sizes_h {
        return Ok(no);
    }
    let mut mults_g = forms_g.mults.clone();
    let mut mults_h = forms_h.mults.clone();
    mults_g.sort_unstable();
    mults_h.sort_unstable();
    if mults_g != mults_h {
        return Ok(no);
    }
    let sig_g: Vec<_> = (0..n).map(|i| block_signature(tensor_g, part_g, i)).collect();
    let sig_h: Vec<_> = (0..n).map(|i| block_signature(tensor_h, part_h, i)).collect();
    {
        let mut a = sig_g.clone();
        let mut b = sig_h.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Ok(no);
        }
    }
    if sig_g[0] != sig_h[0] {
        return Ok(no);
    }

    struct Search<'a> {
        tg: &'a StructTensor,
        th: &'a StructTensor,
        part_g: &'a GoodPartition,
        part_h: &'a GoodPartition,
        sig_g: &'a [(u64, bool, i64, i64)],
        sig_h: &'a [(u64, bool, i64, i64)],
    }

    impl Search<'_> {
        fn consistent(&self, sigma: &[usize], k: usize) -> bool {
            let n = self.tg.n;
            for i in 0..n {
                if sigma[i] == usize::MAX {
                    continue;
                }
                for j in 0..n {
                    if sigma[j] == usize::MAX {
                        continue;
                    }
                    if self.tg.at(k, i, j) != self.th.at(sigma[k], sigma[i], sigma[j])
                        || self.tg.at(i, k, j) != self.th.at(sigma[i], sigma[k], sigma[j])
                        || self.tg.at(i, j, k) != self.th.at(sigma[i], sigma[j], sigma[k])
                    {
                        return false;
                    }
                }
            }
            true
        }

        fn backtrack(&self, sigma: &mut Vec<usize>, used: &mut Vec<bool>, depth: usize) -> bool {
            let n = self.tg.n;
            if depth == n {
                return true;
            }
            if sigma[depth] != usize::MAX {
                return self.backtrack(sigma, used, depth + 1);
            }
            let ip = self.part_g.inverse_block[depth];
            let forced = if sigma[ip] != usize::MAX {
                Some(self.part_h.inverse_block[sigma[ip]])
            } else {
                None
            };
            for v in 0..n {
                if used[v] || self.sig_g[depth] != self.sig_h[v] {
                    continue;
                }
                if let Some(f) = forced {
                    if v != f {
                        continue;
                    }
                }
                sigma[depth] = v;
                used[v] = true;
                if self.consistent(sigma, depth) && self.backtrack(sigma, used, depth + 1) {
                    return true;
                }
                sigma[depth] = usize::MAX;
                used[v] = false;
            }
            false
        }
    }

    let search = Search { tg: tensor_g, th: tensor_h, part_g, part_h, sig_g: &sig_g, sig_h: &sig_h };
    let mut sigma = vec![usize::MAX; n];
    let mut used = vec![false; n];
    sigma[0] = 0;
    used[0] = true;
    if !search.consistent(&sigma, 0) || !search.backtrack(&mut sigma, &mut used, 0) {
        return Ok(no);
    }
    // exact cross-check: collapsed products agree at sample points
    let mut rng = SplitMix64::new(0xc0ffee);
    for _ in 0..3 {
        let x: Vec<i64> = (0..n).map(|_| rng.range_i64(-5, 5)).collect();
        let mut x_h = vec![0i64; n];
        for i in 0..n {
            x_h[sigma[i]] = x[i];
        }
        let vg = forms_g.eval_product(&x)?;
        let vh = forms_h.eval_product(&x_h)?;
        if vg != vh {
            return Err(Error::VerificationFailed(
                "tensor isomorphism found but form products disagree".into(),
            ));
        }
    }
    Ok(PermutationVerdict { equal: true, witness: Some(sigma) })
}

// ---------------------------------------------------------------------------
// reconstruction of the tensor from the factored form
// ---------------------------------------------------------------------------

/// Recover a_{lij} from the forms by solving lambda_i lambda_j =
/// sum_l a_{lij} lambda_l modulo a prime large enough to lift the
/// nonnegative integers uniquely, then verify the definition equations in
/// cyclotomic arithmetic.
pub fn table_from_frobenius(forms: &LinearFormProduct) -> Result<StructTensor> {
    let n = forms.n;
    let m = forms.m;
    let total: u64 = forms.covered_order.max(forms.mults.iter().sum());
    let bound = total * total;
    let mut lower = bound + 1;
    for _attempt in 0..4 {
        let q = crate::arith::prime_one_mod(m, lower);
        let zq = crate::modp::element_of_order(m, q);
        let mut rmat = MatP::zero(n, n);
        for t in 0..n {
            for l in 0..n {
                rmat.set(t, l, forms.forms[t][l].eval_modp(q, zq));
            }
        }
        let mut entries = vec![0i64; n * n * n];
        let mut ok = true;
        'solve: for i in 0..n {
            for j in 0..n {
                let rhs: Vec<u64> =
                    (0..n).map(|t| mulm(rmat.at(t, i), rmat.at(t, j), q)).collect();
                let Some(col) = rmat.solve(&rhs, q) else {
                    ok = false;
                    break 'solve;
                };
                for l in 0..n {
                    if col[l] > bound {
                        return Err(Error::VerificationFailed(format!(
                            "recovered coefficient {} exceeds the bound {}",
                            col[l], bound
                        )));
                    }
                    entries[(l * n + i) * n + j] = col[l] as i64;
                }
            }
        }
        if !ok {
            lower = q;
            continue;
        }
        let tensor = StructTensor::from_raw(n, entries);
        for t in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let lhs = forms.forms[t][i].mul(&forms.forms[t][j]);
                    let mut rhs = Cyc::zero(m as usize);
                    for l in 0..n {
                        let a = tensor.at(l, i, j);
                        if a != 0 {
                            rhs = rhs.add(&forms.forms[t][l].scale_int(a));
                        }
                    }
                    if !lhs.eq_modular(&rhs) {
                        return Err(Error::VerificationFailed(format!(
                            "recovered tensor fails the definition equations at \
                             (t={}, i={}, j={})",
                            t, i, j
                        )));
                    }
                }
            }
        }
        return Ok(tensor);
    }
    Err(Error::Singular(
        "no prime made the form matrix invertible; forms are degenerate".into(),
    ))
}

// ---------------------------------------------------------------------------
// group determinant spot check
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct DetCheckReport {
    pub trials: usize,
    pub seed: u64,
    pub all_match: bool,
    pub mult_sum_matches: bool,
    pub failures: Vec<String>,
}

/// Sample integer values per block, build the full |G| x |G| matrix
/// (x_{PQ^-1}) with values constant on blocks, and compare its exact
/// Bareiss determinant against prod_t gamma_t(x)^{m_t}.
pub fn group_determinant_check(
    g: &FiniteGroup,
    classes: &ClassData,
    part: &GoodPartition,
    forms: &LinearFormProduct,
    trials: usize,
    seed: u64,
) -> Result<DetCheckReport> {
    let ell = g.order();
    if ell > 60 {
        return Err(Error::Unsupported(format!(
            "group determinant check is limited to order <= 60, got {}",
            ell
        )));
    }
    if !part.identity_block_is_singleton() || part.covered_order != ell as u64 {
        return Err(Error::Unsupported(
            "determinant check needs a full partition with singleton identity block".into(),
        ));
    }
    let n = part.n_blocks();
    let mult_sum: u64 = forms.mults.iter().sum();
    let mult_sum_matches = mult_sum == ell as u64;
    // sample all points first so the seed fully determines them, then run
    // the independent trials in parallel
    let mut rng = SplitMix64::new(seed);
    let points: Vec<Vec<i64>> = (0..trials)
        .map(|_| (0..n).map(|_| rng.range_i64(-9, 9)).collect())
        .collect();
    use rayon::prelude::*;
    let results: Vec<Option<String>> = points
        .par_iter()
        .enumerate()
        .map(|(trial, x)| {
            let mut rows = vec![vec![0i64; ell]; ell];
            for pp in 0..ell {
                for qq in 0..ell {
                    let cls = classes.class_of[g.mul(pp, g.inv_of(qq))] as usize;
                    rows[pp][qq] = x[part.block_of[cls].expect("full cover")];
                }
            }
            let det = ZMat::from_i64_rows(&rows).det();
            match forms.eval_product(x) {
                Ok(prod) if det == prod => None,
                Ok(prod) => Some(format!(
                    "trial {}: det = {}, form product = {} at x = {:?}",
                    trial, det, prod, x
                )),
                Err(e) => Some(format!("trial {}: {}", trial, e)),
            }
        })
        .collect();
    let failures: Vec<String> = results.into_iter().flatten().collect();
    Ok(DetCheckReport {
        trials,
        seed,
        all_match: failures.is_empty(),
        mult_sum_matches,
        failures,
    })
}

// ---------------------------------------------------------------------------
// normal-subgroup lattice from closed class subsets
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct ClassLattice {
    /// Each node is a closed subset of class indices (sorted) with its
    /// total element count.
    pub nodes: Vec<(Vec<usize>, u64)>,
    /// Hasse cover edges (child index, parent index).
    pub edges: Vec<(usize, usize)>,
}

/// Smallest closed subset containing the given classes and the identity
/// class: closed means a_{lij} = 0 whenever i, j are inside and l outside.
fn close_class_set(tensor: &StructTensor, start: &[usize]) -> Vec<usize> {
    let n = tensor.n;
    let mut inside = vec![false; n];
    inside[0] = true;
    for &c in start {
        inside[c] = true;
    }
    loop {
        let mut grew = false;
        for i in 0..n {
            if !inside[i] {
                continue;
            }
            for j in 0..n {
                if !inside[j] {
                    continue;
                }
                for l in 0..n {
                    if !inside[l] && tensor.at(l, i, j) != 0 {
                        inside[l] = true;
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    (0..n).filter(|&i| inside[i]).collect()
}

/// All closed class subsets (= normal subgroups as unions of classes),
/// generated by closing the single-class closures under union.
pub fn normal_subgroup_lattice(
    tensor: &StructTensor,
    part: &GoodPartition,
) -> Result<ClassLattice> {
    if part.kind != crate::partition::PartitionKind::Trivial {
        return Err(Error::Unsupported(
            "the normal-subgroup lattice is read off the trivial partition".into(),
        ));
    }
    let n = tensor.n;
    let mut closed: Vec<Vec<usize>> = Vec::new();
    for c in 0..n {
        let irr = close_class_set(tensor, &[c]);
        if !closed.contains(&irr) {
            closed.push(irr);
        }
    }
    loop {
        let mut grew = false;
        let snapshot = closed.clone();
        for a in &snapshot {
            for b in &snapshot {
                let mut union: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
                union.sort_unstable();
                union.dedup();
                let c = close_class_set(tensor, &union);
                if !closed.contains(&c) {
                    closed.push(c);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let mut nodes: Vec<(Vec<usize>, u64)> = closed
        .into_iter()
        .map(|classes| {
            let size: u64 = classes.iter().map(|&c| part.sizes[c]).sum();
            (classes, size)
        })
        .collect();
    nodes.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
    let contains = |big: &Vec<usize>, small: &Vec<usize>| small.iter().all(|c| big.contains(c));
    let mut edges = Vec::new();
    for i in 0..nodes.len() {
        for j in 0..nodes.len() {
            if i == j || !contains(&nodes[j].0, &nodes[i].0) || nodes[i].0.len() == nodes[j].0.len()
            {
                continue;
            }
            let intermediate = (0..nodes.len()).any(|k| {
                k != i
                    && k != j
                    && contains(&nodes[k].0, &nodes[i].0)
                    && contains(&nodes[j].0, &nodes[k].0)
                    && nodes[k].0.len() != nodes[i].0.len()
                    && nodes[k].0.len() != nodes[j].0.len()
            });
            if !intermediate {
                edges.push((i, j));
            }
        }
    }
    Ok(ClassLattice { nodes, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::partition_character_table;
    use crate::characters::tests::build_table;
    use crate::class_algebra::{gram_matrix, regular_representation};
    use crate::group::{conjugacy_classes, load_group, GroupSource, DEFAULT_ORDER_BOUND};
    use crate::partition::{build_partition, structure_constants, PartitionKind};

    fn full_stack(
        spec: &str,
        kind: PartitionKind,
    ) -> (
        FiniteGroup,
        ClassData,
        GoodPartition,
        StructTensor,
        RegularRep,
        GramMatrix,
        PartitionTable,
    ) {
        let (g, c, table) = build_table(spec);
        let part = build_partition(&g, &c, &kind).unwrap();
        let tensor = structure_constants(&g, &c, &part).unwrap();
        let rep = regular_representation(&tensor, &part).unwrap();
        let gram = gram_matrix(&rep).unwrap();
        let pt = partition_character_table(&table, &part, &rep, &gram, &tensor, &g).unwrap();
        (g, c, part, tensor, rep, gram, pt)
    }

    #[test]
    fn s3_frobenius_forms() {
        let (_, c, _part, _tensor, _rep, _gram, pt) = full_stack("Sn:3", PartitionKind::Trivial);
        let forms = frobenius_polynomial(&pt).unwrap();
        assert_eq!(forms.n, 3);
        let mut mults = forms.mults.clone();
        mults.sort_unstable();
        assert_eq!(mults, vec![1, 1, 4]);
        // evaluated at basis vectors, the forms recover the eigen columns of A_j
        let tr = (0..3).find(|&i| c.rep_orders[i] == 2).unwrap();
        let mut basis = vec![0i64; 3];
        basis[tr] = 1;
        let mut ints: Vec<i64> = (0..3)
            .map(|t| forms.eval_form(t, &basis).as_integer().unwrap().to_i64().unwrap())
            .collect();
        ints.sort_unstable();
        assert_eq!(ints, vec![-3, 0, 3]);
    }

    #[test]
    fn z2_frobenius_product() {
        let (_, _, _part, _tensor, _rep, _gram, pt) = full_stack("Zn:2", PartitionKind::Trivial);
        let forms = frobenius_polynomial(&pt).unwrap();
        // F = (x1 + x2)(x1 - x2): at (3, 2) the product is 5
        let v = forms.eval_product(&[3, 2]).unwrap();
        assert_eq!(v, BigInt::from(5));
    }

    #[test]
    fn degree_polynomial_s3() {
        let (g, _, part, tensor, rep, gram, _pt) = full_stack("Sn:3", PartitionKind::Trivial);
        let (a, b) = degree_polynomial_both(&g, &rep, &part, &gram, &tensor).unwrap();
        assert_eq!(a.coeffs, b.coeffs);
        assert_eq!(a.roots, vec![1, 1, 4]);
        assert_eq!(a.render_factored(), "(x-1)^2*(x-4)");
    }

    #[test]
    fn degree_polynomial_zn() {
        let (g, _, part, tensor, rep, gram, _pt) = full_stack("Zn:4", PartitionKind::Trivial);
        let (a, _) = degree_polynomial_both(&g, &rep, &part, &gram, &tensor).unwrap();
        assert_eq!(a.roots, vec![1, 1, 1, 1]);
        assert_eq!(a.render_factored(), "(x-1)^4");
    }

    #[test]
    fn degree_polynomial_z5_rational() {
        let (g, _, part, tensor, rep, gram, _pt) = full_stack("Zn:5", PartitionKind::Rational);
        let (a, b) = degree_polynomial_both(&g, &rep, &part, &gram, &tensor).unwrap();
        assert_eq!(a.coeffs, b.coeffs);
        assert_eq!(a.roots, vec![1, 4]);
        assert_eq!(a.render_factored(), "(x-1)*(x-4)");
    }

    #[test]
    fn p_prime_parts_s3() {
        let (g, _, part, tensor, rep, gram, _pt) = full_stack("Sn:3", PartitionKind::Trivial);
        let (d, _) = degree_polynomial_both(&g, &rep, &part, &gram, &tensor).unwrap();
        // (x-1)^2 (x-4) mod 2 = x(x+1)^2
        let p2 = p_prime_part(&d, 2);
        assert_eq!(p2.stripped, 1);
        assert_eq!(p2.reduced, vec![1, 0, 1]);
        // mod 3: (x+2)^3 with constant 8 mod 3 = 2
        let p3 = p_prime_part(&d, 3);
        assert_eq!(p3.stripped, 0);
        assert_eq!(p3.reduced, vec![2, 0, 0, 1]);
        assert_eq!(p3.root_multiplicity(1), 3);
    }

    #[test]
    fn d8_q8_same_frobenius_up_to_permutation() {
        let (_, _, part_d, tensor_d, _, _, pt_d) = full_stack("D:8", PartitionKind::Trivial);
        let (_, _, part_q, tensor_q, _, _, pt_q) = full_stack("Q8", PartitionKind::Trivial);
        let forms_d = frobenius_polynomial(&pt_d).unwrap();
        let forms_q = frobenius_polynomial(&pt_q).unwrap();
        let verdict =
            equal_by_permutation(&tensor_d, &part_d, &forms_d, &tensor_q, &part_q, &forms_q)
                .unwrap();
        assert!(verdict.equal);
        let sigma = verdict.witness.unwrap();
        assert_eq!(sigma[0], 0);
        for l in 0..5 {
            for i in 0..5 {
                for j in 0..5 {
                    assert_eq!(tensor_d.at(l, i, j), tensor_q.at(sigma[l], sigma[i], sigma[j]));
                }
            }
        }
    }

    #[test]
    fn s3_z6_different_frobenius() {
        let (_, _, part_a, tensor_a, _, _, pt_a) = full_stack("Sn:3", PartitionKind::Trivial);
        let (_, _, part_b, tensor_b, _, _, pt_b) = full_stack("Zn:6", PartitionKind::Trivial);
        let forms_a = frobenius_polynomial(&pt_a).unwrap();
        let forms_b = frobenius_polynomial(&pt_b).unwrap();
        let verdict =
            equal_by_permutation(&tensor_a, &part_a, &forms_a, &tensor_b, &part_b, &forms_b)
                .unwrap();
        assert!(!verdict.equal);
        let verdict =
            equal_by_permutation(&tensor_a, &part_a, &forms_a, &tensor_a, &part_a, &forms_a)
                .unwrap();
        assert!(verdict.equal);
    }

    #[test]
    fn tensor_roundtrip_from_forms() {
        for (spec, kind) in [
            ("Sn:3", PartitionKind::Trivial),
            ("Zn:2", PartitionKind::Trivial),
            ("Zn:5", PartitionKind::Rational),
            ("Q8", PartitionKind::Trivial),
        ] {
            let (_, _, _part, tensor, _, _, pt) = full_stack(spec, kind.clone());
            let forms = frobenius_polynomial(&pt).unwrap();
            let recovered = table_from_frobenius(&forms).unwrap();
            assert_eq!(recovered.raw(), tensor.raw(), "{} {:?}", spec, kind);
        }
    }

    #[test]
    fn determinant_check_examples() {
        let (g, c, part, _tensor, _, _, pt) = full_stack("Zn:2", PartitionKind::Trivial);
        let forms = frobenius_polynomial(&pt).unwrap();
        let report = group_determinant_check(&g, &c, &part, &forms, 20, 42).unwrap();
        assert!(report.all_match && report.mult_sum_matches, "{:?}", report.failures);

        let (g, c, part, _tensor, _, _, pt) = full_stack("Sn:3", PartitionKind::Trivial);
        let forms = frobenius_polynomial(&pt).unwrap();
        let report = group_determinant_check(&g, &c, &part, &forms, 20, 7).unwrap();
        assert!(report.all_match && report.mult_sum_matches, "{:?}", report.failures);
        // x = (1,1,1) makes both sides 0; the identity indicator makes both 1
        assert_eq!(forms.eval_product(&[1, 1, 1]).unwrap(), BigInt::zero());
        assert_eq!(forms.eval_product(&[1, 0, 0]).unwrap(), BigInt::one());
    }

    #[test]
    fn lattice_examples() {
        let (_, _, part, tensor, _, _, _) = full_stack("Sn:3", PartitionKind::Trivial);
        let lat = normal_subgroup_lattice(&tensor, &part).unwrap();
        let sizes: Vec<u64> = lat.nodes.iter().map(|(_, s)| *s).collect();
        assert_eq!(sizes, vec![1, 3, 6]);
        assert_eq!(lat.edges.len(), 2);

        let (_, _, part, tensor, _, _, _) = full_stack("Zn:4", PartitionKind::Trivial);
        let lat = normal_subgroup_lattice(&tensor, &part).unwrap();
        let sizes: Vec<u64> = lat.nodes.iter().map(|(_, s)| *s).collect();
        assert_eq!(sizes, vec![1, 2, 4]);

        let (_, _, part, tensor, _, _, _) = full_stack("An:5", PartitionKind::Trivial);
        let lat = normal_subgroup_lattice(&tensor, &part).unwrap();
        assert_eq!(lat.nodes.len(), 2);
    }

    /// Brute-force lattice oracle: test every union of classes containing
    /// the identity class for subgroup-ness.
    pub(crate) fn lattice_oracle(g: &FiniteGroup, c: &ClassData) -> Vec<Vec<usize>> {
        let n = c.n_classes;
        let mut out = Vec::new();
        for mask in 0..(1u32 << (n - 1)) {
            let mut classes = vec![0usize];
            for b in 0..n - 1 {
                if mask & (1 << b) != 0 {
                    classes.push(b + 1);
                }
            }
            let total: u64 = classes.iter().map(|&cl| c.sizes[cl]).sum();
            if g.order() as u64 % total != 0 {
                continue;
            }
            let mut member = vec![false; g.order()];
            for &cl in &classes {
                for &x in &c.members[cl] {
                    member[x as usize] = true;
                }
            }
            let mut ok = true;
            'check: for x in 0..g.order() {
                if !member[x] {
                    continue;
                }
                for y in 0..g.order() {
                    if member[y] && !member[g.mul(x, y)] {
                        ok = false;
                        break 'check;
                    }
                }
            }
            if ok {
                out.push(classes);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn lattice_matches_bruteforce() {
        for spec in ["Sn:4", "An:4", "Q8", "D:12", "Zn:12", "SL23"] {
            let g = load_group(&GroupSource::Builtin(spec.into()), DEFAULT_ORDER_BOUND).unwrap();
            let c = conjugacy_classes(&g);
            let part = build_partition(&g, &c, &PartitionKind::Trivial).unwrap();
            let tensor = structure_constants(&g, &c, &part).unwrap();
            let lat = normal_subgroup_lattice(&tensor, &part).unwrap();
            let mut got: Vec<Vec<usize>> = lat.nodes.iter().map(|(cl, _)| cl.clone()).collect();
            got.sort();
            assert_eq!(got, lattice_oracle(&g, &c), "{}", spec);
        }
    }
}
