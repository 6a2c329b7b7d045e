//! Good partitions of the conjugacy classes and the integer
//! structure-constant tensor of the resulting partition algebra.
//!
//! A partition of (a subset of) Cl(G) is *good* when it is closed under
//! inversion, the block sums multiply with integer coefficients supported
//! on the blocks, and the spanned algebra has an identity. Everything
//! downstream (regular representation, characters, polynomials) consumes
//! the tensor built here.

use crate::arith::{close_units, gcd_u64, units_mod};
use crate::error::{Error, Result};
use crate::group::{conjugacy_classes, exponent, ClassData, FiniteGroup};
use crate::matrix::QMat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionKind {
    Trivial,
    /// Orbits of classes under i -> power_class(i, t) for t in the closure
    /// of the given residues inside (Z/m)*, m = exp(G).
    Galois(Vec<u64>),
    /// Galois with the full unit group: rational classes.
    Rational,
    /// Classes merged by their image in G/N; N given as a list of class
    /// indices whose union is a normal subgroup.
    Coset(Vec<usize>),
    /// The classes inside a normal subgroup N, one block per class.
    SubgroupClasses(Vec<usize>),
    /// Explicit block list of class indices.
    Custom(Vec<Vec<usize>>),
}

impl PartitionKind {
    pub fn tag(&self) -> String {
        match self {
            PartitionKind::Trivial => "trivial".into(),
            PartitionKind::Galois(t) => format!(
                "galois={}",
                t.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
            ),
            PartitionKind::Rational => "rational".into(),
            PartitionKind::Coset(c) => format!(
                "coset={}",
                c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
            ),
            PartitionKind::SubgroupClasses(c) => format!(
                "subgroup={}",
                c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
            ),
            PartitionKind::Custom(blocks) => format!(
                "custom={}",
                blocks
                    .iter()
                    .map(|b| b.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
                    .collect::<Vec<_>>()
                    .join(";")
            ),
        }
    }

    /// Parse the CLI grammar: `trivial`, `rational`, `galois=<t1,t2,...>`,
    /// `coset=<classes>`, `subgroup=<classes>`, `custom=<b;b;...>`.
    pub fn parse(spec: &str) -> Result<PartitionKind> {
        let spec = spec.trim();
        if spec == "trivial" {
            return Ok(PartitionKind::Trivial);
        }
        if spec == "rational" {
            return Ok(PartitionKind::Rational);
        }
        let (kind, arg) = spec
            .split_once('=')
            .ok_or_else(|| Error::BadPartitionSpec(format!("unrecognized spec {:?}", spec)))?;
        let parse_list = |s: &str| -> Result<Vec<usize>> {
            s.split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::BadPartitionSpec(format!("bad index {:?}", t)))
                })
                .collect()
        };
        match kind {
            "galois" => {
                let ts: Vec<u64> = arg
                    .split(',')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| {
                        t.trim()
                            .parse::<u64>()
                            .map_err(|_| Error::BadPartitionSpec(format!("bad residue {:?}", t)))
                    })
                    .collect::<Result<_>>()?;
                Ok(PartitionKind::Galois(ts))
            }
            "coset" => Ok(PartitionKind::Coset(parse_list(arg)?)),
            "subgroup" => Ok(PartitionKind::SubgroupClasses(parse_list(arg)?)),
            "custom" => {
                let blocks: Vec<Vec<usize>> = arg
                    .split(';')
                    .filter(|b| !b.trim().is_empty())
                    .map(parse_list)
                    .collect::<Result<_>>()?;
                Ok(PartitionKind::Custom(blocks))
            }
            other => Err(Error::BadPartitionSpec(format!("unknown kind {:?}", other))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GoodPartition {
    /// Blocks of class indices; block 0 contains the identity class.
    pub blocks: Vec<Vec<usize>>,
    /// class index -> block index; None for classes outside the cover
    /// (subgroup-classes partitions cover only the classes inside N).
    pub block_of: Vec<Option<usize>>,
    /// Element count of each block (sum of ambient class sizes).
    pub sizes: Vec<u64>,
    pub inverse_block: Vec<usize>,
    pub kind: PartitionKind,
    /// Rational vector c with (sum_i c_i C_i) acting as the algebra identity.
    pub identity_coeffs: Vec<BigRational>,
    /// Total number of covered elements; |G| except for subgroup-classes.
    pub covered_order: u64,
}

impl GoodPartition {
    pub fn n_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// True when block 0 is exactly the identity class; the collapsed
    /// group-determinant machinery assumes this.
    pub fn identity_block_is_singleton(&self) -> bool {
        self.blocks[0] == [0] && self.sizes[0] == 1
    }
}

/// The integer tensor a_{lij} with C_i C_j = sum_l a_{lij} C_l.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructTensor {
    pub n: usize,
    a: Vec<i64>,
}

impl StructTensor {
    pub fn from_raw(n: usize, a: Vec<i64>) -> Self {
        assert_eq!(a.len(), n * n * n);
        StructTensor { n, a }
    }

    #[inline]
    pub fn at(&self, l: usize, i: usize, j: usize) -> i64 {
        self.a[(l * self.n + i) * self.n + j]
    }

    pub fn raw(&self) -> &[i64] {
        &self.a
    }
}

// ---------------------------------------------------------------------------
// construction
// ---------------------------------------------------------------------------

fn finalize_blocks(
    g: &FiniteGroup,
    classes: &ClassData,
    mut blocks: Vec<Vec<usize>>,
    kind: PartitionKind,
) -> Result<GoodPartition> {
    for b in &mut blocks {
        b.sort_unstable();
        b.dedup();
    }
    blocks.sort_by_key(|b| *b.first().unwrap_or(&usize::MAX));
    if blocks.is_empty() || !blocks[0].contains(&0) {
        return Err(Error::NotGoodPartition(
            "a block containing the identity class must exist".into(),
        ));
    }
    let mut block_of = vec![None; classes.n_classes];
    for (bi, b) in blocks.iter().enumerate() {
        for &c in b {
            if c >= classes.n_classes {
                return Err(Error::BadPartitionSpec(format!(
                    "class index {} out of range",
                    c
                )));
            }
            if block_of[c].is_some() {
                return Err(Error::NotGoodPartition(format!(
                    "class {} appears in two blocks",
                    c
                )));
            }
            block_of[c] = Some(bi);
        }
    }
    let sizes: Vec<u64> = blocks
        .iter()
        .map(|b| b.iter().map(|&c| classes.sizes[c]).sum())
        .collect();
    // inverse closure (condition 1)
    let block_sets: Vec<BTreeSet<usize>> =
        blocks.iter().map(|b| b.iter().copied().collect()).collect();
    let mut inverse_block = Vec::with_capacity(blocks.len());
    for b in &blocks {
        let inv_set: BTreeSet<usize> = b.iter().map(|&c| classes.inverse_class[c]).collect();
        let target = block_sets
            .iter()
            .position(|other| *other == inv_set)
            .ok_or_else(|| {
                Error::NotGoodPartition(format!("inverse image of block {:?} is not a block", b))
            })?;
        inverse_block.push(target);
    }
    for (i, &ip) in inverse_block.iter().enumerate() {
        if inverse_block[ip] != i || sizes[i] != sizes[ip] {
            return Err(Error::NotGoodPartition(
                "inversion is not an involution on blocks".into(),
            ));
        }
    }
    let covered_order = sizes.iter().sum();
    let mut part = GoodPartition {
        blocks,
        block_of,
        sizes,
        inverse_block,
        kind,
        identity_coeffs: Vec::new(),
        covered_order,
    };
    // product closure with integer coefficients (condition 2) plus the
    // algebra identity (condition 3)
    let tensor = structure_constants_unchecked(g, classes, &part)?;
    part.identity_coeffs = algebra_identity(&tensor)?;
    Ok(part)
}

/// Check that the class-index list is a union of classes forming a normal
/// subgroup, and return its element mask. The identity class is implied.
fn normal_subgroup_from_classes(
    g: &FiniteGroup,
    classes: &ClassData,
    class_list: &[usize],
) -> Result<Vec<bool>> {
    let mut set: BTreeSet<usize> = class_list.iter().copied().collect();
    set.insert(0);
    let mut mask = vec![false; g.order()];
    for &c in &set {
        if c >= classes.n_classes {
            return Err(Error::BadPartitionSpec(format!("class {} out of range", c)));
        }
        for &m in &classes.members[c] {
            mask[m as usize] = true;
        }
    }
    // closed under products; inverse closure follows for finite subsets
    for x in 0..g.order() {
        if !mask[x] {
            continue;
        }
        for y in 0..g.order() {
            if mask[y] && !mask[g.mul(x, y)] {
                return Err(Error::NotNormal(format!(
                    "classes {:?} are not closed under multiplication",
                    set
                )));
            }
        }
    }
    Ok(mask)
}

pub fn build_partition(
    g: &FiniteGroup,
    classes: &ClassData,
    kind: &PartitionKind,
) -> Result<GoodPartition> {
    match kind {
        PartitionKind::Trivial => {
            let blocks = (0..classes.n_classes).map(|c| vec![c]).collect();
            finalize_blocks(g, classes, blocks, kind.clone())
        }
        PartitionKind::Galois(ts) => {
            let m = exponent(g);
            for &t in ts {
                if m > 1 && gcd_u64(t % m, m) != 1 {
                    return Err(Error::BadPartitionSpec(format!(
                        "residue {} is not a unit mod exponent {}",
                        t, m
                    )));
                }
            }
            let closure = close_units(m, ts);
            finalize_blocks(g, classes, galois_blocks(g, classes, &closure), kind.clone())
        }
        PartitionKind::Rational => {
            let m = exponent(g);
            let all = units_mod(m);
            finalize_blocks(g, classes, galois_blocks(g, classes, &all), kind.clone())
        }
        PartitionKind::Coset(class_list) => {
            let mask = normal_subgroup_from_classes(g, classes, class_list)?;
            let blocks = coset_blocks(g, classes, &mask);
            finalize_blocks(g, classes, blocks, kind.clone())
        }
        PartitionKind::SubgroupClasses(class_list) => {
            let mask = normal_subgroup_from_classes(g, classes, class_list)?;
            let mut covered: BTreeSet<usize> = BTreeSet::new();
            for x in 0..g.order() {
                if mask[x] {
                    covered.insert(classes.class_of[x] as usize);
                }
            }
            let blocks = covered.into_iter().map(|c| vec![c]).collect();
            finalize_blocks(g, classes, blocks, kind.clone())
        }
        PartitionKind::Custom(blocks) => finalize_blocks(g, classes, blocks.clone(), kind.clone()),
    }
}

fn galois_blocks(g: &FiniteGroup, classes: &ClassData, units: &[u64]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; classes.n_classes];
    let mut blocks = Vec::new();
    for c in 0..classes.n_classes {
        if seen[c] {
            continue;
        }
        let mut orbit = BTreeSet::new();
        orbit.insert(c);
        loop {
            let mut grew = false;
            let snapshot: Vec<usize> = orbit.iter().copied().collect();
            for &o in &snapshot {
                for &t in units {
                    if orbit.insert(classes.power_class(g, o, t)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        for &o in &orbit {
            seen[o] = true;
        }
        blocks.push(orbit.into_iter().collect());
    }
    blocks
}

fn coset_blocks(g: &FiniteGroup, classes: &ClassData, n_mask: &[bool]) -> Vec<Vec<usize>> {
    // canonical coset label: minimal element index of gN
    let n_members: Vec<usize> = (0..g.order()).filter(|&x| n_mask[x]).collect();
    let mut coset_label = vec![usize::MAX; g.order()];
    for x in 0..g.order() {
        if coset_label[x] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = n_members.iter().map(|&m| g.mul(x, m)).collect();
        let label = *members.iter().min().unwrap();
        for y in members {
            coset_label[y] = label;
        }
    }
    // quotient group on coset labels
    let labels: BTreeSet<usize> = coset_label.iter().copied().collect();
    let label_index: BTreeMap<usize, usize> =
        labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let q = labels.len();
    let label_list: Vec<usize> = labels.iter().copied().collect();
    let mut qtable = vec![vec![0u32; q]; q];
    for (i, &a) in label_list.iter().enumerate() {
        for (j, &b) in label_list.iter().enumerate() {
            qtable[i][j] = label_index[&coset_label[g.mul(a, b)]] as u32;
        }
    }
    let quotient = FiniteGroup::from_table(qtable, "quotient".into(), q.max(1))
        .expect("quotient of a group by a normal subgroup is a group");
    let qclasses = conjugacy_classes(&quotient);
    // block of class c = conjugacy class of its image in G/N
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for c in 0..classes.n_classes {
        let rep = classes.reps[c] as usize;
        let image = label_index[&coset_label[rep]];
        let qclass = qclasses.class_of[image] as usize;
        groups.entry(qclass).or_default().push(c);
    }
    groups.into_values().collect()
}

// ---------------------------------------------------------------------------
// structure constants
// ---------------------------------------------------------------------------

/// Count products from block i x block j landing in each class, and check
/// the per-element coefficient is constant across the classes of every
/// block. Returns the per-block coefficients column a_{. i j}.
fn product_column(
    g: &FiniteGroup,
    classes: &ClassData,
    part: &GoodPartition,
    i: usize,
    j: usize,
) -> Result<Vec<i64>> {
    let mut hist = vec![0u64; classes.n_classes];
    for &x in part.blocks[i].iter().flat_map(|&c| classes.members[c].iter()) {
        for &y in part.blocks[j].iter().flat_map(|&c| classes.members[c].iter()) {
            hist[classes.class_of[g.mul(x as usize, y as usize)] as usize] += 1;
        }
    }
    let n = part.n_blocks();
    let mut column = vec![i64::MIN; n];
    for c in 0..classes.n_classes {
        let covered = part.block_of[c];
        if hist[c] == 0 {
            continue;
        }
        let Some(b) = covered else {
            return Err(Error::NotGoodPartition(format!(
                "product of blocks {} and {} meets uncovered class {}",
                i, j, c
            )));
        };
        let per_element = hist[c] / classes.sizes[c];
        debug_assert_eq!(per_element * classes.sizes[c], hist[c]);
        if column[b] == i64::MIN {
            column[b] = per_element as i64;
        } else if column[b] != per_element as i64 {
            return Err(Error::NotGoodPartition(format!(
                "expansion of block product ({}, {}) is not constant on block {}: \
                 class {} gets coefficient {} but an earlier class got {}",
                i, j, b, c, per_element, column[b]
            )));
        }
    }
    // a block mixing hit and unhit classes also breaks constancy
    for (b, block) in part.blocks.iter().enumerate() {
        if column[b] == i64::MIN {
            column[b] = 0;
        } else if column[b] != 0 {
            for &c in block {
                if (hist[c] / classes.sizes[c]) as i64 != column[b] {
                    return Err(Error::NotGoodPartition(format!(
                        "expansion of block product ({}, {}) misses class {} of block {}",
                        i, j, c, b
                    )));
                }
            }
        }
    }
    Ok(column)
}

fn structure_constants_unchecked(
    g: &FiniteGroup,
    classes: &ClassData,
    part: &GoodPartition,
) -> Result<StructTensor> {
    let n = part.n_blocks();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .collect();
    let columns: Vec<((usize, usize), Vec<i64>)> = pairs
        .par_iter()
        .map(|&(i, j)| product_column(g, classes, part, i, j).map(|col| ((i, j), col)))
        .collect::<Result<_>>()?;
    let mut a = vec![0i64; n * n * n];
    for ((i, j), col) in columns {
        for (l, &v) in col.iter().enumerate() {
            a[(l * n + i) * n + j] = v;
            a[(l * n + j) * n + i] = v;
        }
    }
    let tensor = StructTensor { n, a };
    // row-sum identity: sum_l a_{lij} l_l = l_i l_j
    for i in 0..n {
        for j in 0..n {
            let total: u64 = (0..n)
                .map(|l| tensor.at(l, i, j) as u64 * part.sizes[l])
                .sum();
            if total != part.sizes[i] * part.sizes[j] {
                return Err(Error::NotGoodPartition(format!(
                    "product count of blocks ({}, {}) does not exhaust the pairs",
                    i, j
                )));
            }
        }
    }
    Ok(tensor)
}

/// Structure constants of a validated partition.
pub fn structure_constants(
    g: &FiniteGroup,
    classes: &ClassData,
    part: &GoodPartition,
) -> Result<StructTensor> {
    structure_constants_unchecked(g, classes, part)
}

// ---------------------------------------------------------------------------
// validation report
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct ConditionReport {
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub inverse_closure: ConditionReport,
    pub product_closure: ConditionReport,
    pub identity_exists: ConditionReport,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.inverse_closure.passed && self.product_closure.passed && self.identity_exists.passed
    }
}

/// Check the three good-partition conditions on a raw block list, reporting
/// pass/fail per condition with a witness on failure.
pub fn validate_good_partition(
    g: &FiniteGroup,
    classes: &ClassData,
    blocks: &[Vec<usize>],
) -> ValidationReport {
    let ok = || ConditionReport { passed: true, witness: None };
    let fail = |w: String| ConditionReport { passed: false, witness: Some(w) };

    let block_sets: Vec<BTreeSet<usize>> =
        blocks.iter().map(|b| b.iter().copied().collect()).collect();
    let mut inverse_closure = ok();
    for b in &block_sets {
        let inv: BTreeSet<usize> = b.iter().map(|&c| classes.inverse_class[c]).collect();
        if !block_sets.contains(&inv) {
            inverse_closure = fail(format!("inverse of block {:?} is {:?}, not a block", b, inv));
            break;
        }
    }

    match finalize_blocks(g, classes, blocks.to_vec(), PartitionKind::Custom(blocks.to_vec())) {
        Ok(_) => ValidationReport {
            inverse_closure,
            product_closure: ok(),
            identity_exists: ok(),
        },
        Err(Error::NotGoodPartition(msg)) | Err(Error::BadPartitionSpec(msg)) => {
            let identity_related = msg.contains("identity");
            ValidationReport {
                inverse_closure,
                product_closure: if identity_related { ok() } else { fail(msg.clone()) },
                identity_exists: if identity_related { fail(msg) } else { ok() },
            }
        }
        Err(e) => ValidationReport {
            inverse_closure,
            product_closure: fail(e.to_string()),
            identity_exists: fail("not evaluated".into()),
        },
    }
}

// ---------------------------------------------------------------------------
// solution counts and the algebra identity
// ---------------------------------------------------------------------------

/// Number of solutions of g_{i_1} ... g_{i_r} = 1 with g_{i_k} in block
/// i_k, r >= 2. The r = 2 base is l_i \[j = i'], r = 3 comes straight off
/// the tensor, and longer tuples use the splitting recursion over exact
/// rationals with the final result asserted integral.
pub fn solution_count(part: &GoodPartition, tensor: &StructTensor, indices: &[usize]) -> BigInt {
    assert!(indices.len() >= 2);
    let q = solution_count_rational(part, tensor, indices);
    assert!(
        q.is_integer(),
        "solution count for {:?} is not an integer: {}",
        indices,
        q
    );
    q.to_integer()
}

fn solution_count_rational(
    part: &GoodPartition,
    tensor: &StructTensor,
    indices: &[usize],
) -> BigRational {
    let n = part.n_blocks();
    match indices.len() {
        2 => {
            let (i, j) = (indices[0], indices[1]);
            if part.inverse_block[i] == j {
                BigRational::from_integer(BigInt::from(part.sizes[i]))
            } else {
                BigRational::zero()
            }
        }
        3 => {
            let (i, j, k) = (indices[0], indices[1], indices[2]);
            let kp = part.inverse_block[k];
            BigRational::from_integer(
                BigInt::from(part.sizes[k]) * BigInt::from(tensor.at(kp, i, j)),
            )
        }
        _ => {
            // l_{i1..ir} = sum_j (1/l_j) l_{i1..i_{r-2} j} l_{j' i_{r-1} i_r}
            let head = &indices[..indices.len() - 2];
            let tail = &indices[indices.len() - 2..];
            let mut total = BigRational::zero();
            for j in 0..n {
                let mut left_idx: Vec<usize> = head.to_vec();
                left_idx.push(j);
                let left = if left_idx.len() == 1 {
                    // r = 3 overall: handled above, unreachable here
                    unreachable!()
                } else {
                    solution_count_rational(part, tensor, &left_idx)
                };
                if left.is_zero() {
                    continue;
                }
                let right_idx = [part.inverse_block[j], tail[0], tail[1]];
                let right = solution_count_rational(part, tensor, &right_idx);
                if right.is_zero() {
                    continue;
                }
                total += left * right / BigRational::from_integer(BigInt::from(part.sizes[j]));
            }
            total
        }
    }
}

/// Solve sum_i c_i a_{lij} = delta_{lj} for the algebra identity
/// coefficients, exactly over the rationals.
pub fn algebra_identity(tensor: &StructTensor) -> Result<Vec<BigRational>> {
    let n = tensor.n;
    let mut rows = Vec::with_capacity(n * n);
    let mut rhs = Vec::with_capacity(n * n);
    for l in 0..n {
        for j in 0..n {
            let row: Vec<BigRational> = (0..n)
                .map(|i| BigRational::from_integer(BigInt::from(tensor.at(l, i, j))))
                .collect();
            rows.push(row);
            rhs.push(if l == j { BigRational::one() } else { BigRational::zero() });
        }
    }
    QMat::from_rows(rows)
        .solve(&rhs)
        .ok_or_else(|| Error::NotGoodPartition("the algebra has no identity".into()))
}
