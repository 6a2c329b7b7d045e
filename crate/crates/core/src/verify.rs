//! The full invariant suite for one group: every cross-check the engine
//! knows how to run, each reported as a named pass/fail line. Shared by
//! the `verify-all` CLI subcommand and the acceptance tests.

use crate::arith::SplitMix64;
use crate::characters::{
    identity_suite, lift_character_table, partition_character_table, CharacterTable,
};
use crate::class_algebra::{gram_matrix, regular_representation, GramMatrix, RegularRep};
use crate::commutators::{
    brute_counts, class_commutator_multiplicity, commutator_counts, reconstruct_from_triples,
    reduce_forms_at, Convention,
};
use crate::error::Result;
use crate::group::{conjugacy_classes, exponent, ClassData, FiniteGroup};
use crate::mckay::mckay_check;
use crate::partition::{
    build_partition, solution_count, structure_constants, validate_good_partition, GoodPartition,
    PartitionKind, StructTensor,
};
use crate::polynomials::{
    degree_polynomial_both, frobenius_polynomial, group_determinant_check,
    normal_subgroup_lattice, table_from_frobenius,
};
use num_bigint::BigInt;

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub group: String,
    pub items: Vec<(String, bool, String)>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|(_, ok, _)| *ok)
    }

    fn check(&mut self, name: &str, result: Result<()>) {
        match result {
            Ok(()) => self.items.push((name.to_string(), true, String::new())),
            Err(e) => self.items.push((name.to_string(), false, e.to_string())),
        }
    }
}

fn fail(msg: String) -> crate::error::Error {
    crate::error::Error::VerificationFailed(msg)
}

struct Stack {
    part: GoodPartition,
    tensor: StructTensor,
    rep: RegularRep,
    gram: GramMatrix,
}

fn build_stack(g: &FiniteGroup, classes: &ClassData, kind: &PartitionKind) -> Result<Stack> {
    let part = build_partition(g, classes, kind)?;
    let tensor = structure_constants(g, classes, &part)?;
    let rep = regular_representation(&tensor, &part)?;
    let gram = gram_matrix(&rep)?;
    Ok(Stack { part, tensor, rep, gram })
}

/// Brute-force normal-subgroup enumeration: every union of classes
/// containing the identity class, tested for closure under products.
pub fn normal_subgroups_bruteforce(g: &FiniteGroup, c: &ClassData) -> Vec<Vec<usize>> {
    let n = c.n_classes;
    assert!(n <= 26, "mask enumeration is bounded");
    let mut out = Vec::new();
    for mask in 0..(1u64 << (n - 1)) {
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

fn check_group_invariants(g: &FiniteGroup, classes: &ClassData) -> Result<()> {
    let order = g.order() as u64;
    let total: u64 = classes.sizes.iter().sum();
    if total != order {
        return Err(fail("class sizes do not sum to the group order".into()));
    }
    for &s in &classes.sizes {
        if order % s != 0 {
            return Err(fail(format!("class size {} does not divide {}", s, order)));
        }
    }
    for i in 0..classes.n_classes {
        let o = classes.rep_orders[i];
        for s in 1..=o.min(6) {
            for t in 1..=o.min(6) {
                if classes.power_class(g, classes.power_class(g, i, s), t)
                    != classes.power_class(g, i, s * t)
                {
                    return Err(fail("power map is not Galois compatible".into()));
                }
            }
        }
    }
    // Sylow and normalizer structure for every prime divisor
    let mut rest = order;
    let mut primes = Vec::new();
    let mut d = 2u64;
    while d * d <= rest {
        if rest % d == 0 {
            primes.push(d);
            while rest % d == 0 {
                rest /= d;
            }
        }
        d += 1;
    }
    if rest > 1 {
        primes.push(rest);
    }
    for &p in &primes {
        let mut ppart = 1u64;
        let mut r = order;
        while r % p == 0 {
            r /= p;
            ppart *= p;
        }
        let syl = crate::group::sylow_subgroup(g, p, 0)?;
        if syl.order() as u64 != ppart {
            return Err(fail(format!("Sylow {}-subgroup has order {}", p, syl.order())));
        }
        let norm = crate::group::normalizer(g, &syl);
        if norm.order() % syl.order() != 0 {
            return Err(fail("normalizer does not contain its Sylow subgroup".into()));
        }
        for &m in &syl.members {
            if !norm.contains(m as usize) {
                return Err(fail("Sylow subgroup not inside its normalizer".into()));
            }
        }
    }
    Ok(())
}

/// Partitions exercised per group: trivial, rational, and the coset /
/// subgroup-classes partitions of every proper normal subgroup found in
/// the lattice.
fn partition_collection(
    g: &FiniteGroup,
    classes: &ClassData,
    trivial: &Stack,
) -> Result<Vec<PartitionKind>> {
    let mut kinds = vec![PartitionKind::Trivial, PartitionKind::Rational];
    let lattice = normal_subgroup_lattice(&trivial.tensor, &trivial.part)?;
    for (node, _) in &lattice.nodes {
        kinds.push(PartitionKind::Coset(node.clone()));
        kinds.push(PartitionKind::SubgroupClasses(node.clone()));
    }
    let _ = (g, classes);
    Ok(kinds)
}

fn check_tensor_invariants(
    part: &GoodPartition,
    tensor: &StructTensor,
    seed: u64,
) -> Result<()> {
    let n = part.n_blocks();
    let mut rng = SplitMix64::new(seed ^ 0x7e50);
    let mut tuples: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            tuples.push(vec![i, j]);
        }
    }
    let cap = 40usize;
    for r in [3usize, 4] {
        for _ in 0..cap {
            let t: Vec<usize> = (0..r).map(|_| rng.below(n as u64) as usize).collect();
            tuples.push(t);
        }
    }
    for tuple in &tuples {
        let base = solution_count(part, tensor, tuple);
        // inversion of all indices
        let inv: Vec<usize> = tuple.iter().map(|&i| part.inverse_block[i]).collect();
        if solution_count(part, tensor, &inv) != base {
            return Err(fail(format!("count changes under inversion at {:?}", tuple)));
        }
        // cyclic rotation
        let mut rot = tuple.clone();
        rot.rotate_left(1);
        if solution_count(part, tensor, &rot) != base {
            return Err(fail(format!("count changes under rotation at {:?}", tuple)));
        }
        // arbitrary permutation
        let mut perm = tuple.clone();
        perm.sort_unstable();
        if solution_count(part, tensor, &perm) != base {
            return Err(fail(format!("count changes under permutation at {:?}", tuple)));
        }
        // extension identity: sum over the appended index
        let product: BigInt = tuple
            .iter()
            .map(|&i| BigInt::from(part.sizes[i]))
            .product();
        let mut sum = BigInt::from(0);
        for extra in 0..n {
            let mut ext = tuple.clone();
            ext.push(extra);
            sum += solution_count(part, tensor, &ext);
        }
        if sum != product {
            return Err(fail(format!(
                "extension sum {} differs from size product {} at {:?}",
                sum, product, tuple
            )));
        }
    }
    Ok(())
}

fn check_gram_from_counts(
    part: &GoodPartition,
    tensor: &StructTensor,
    gram: &GramMatrix,
) -> Result<()> {
    use num_rational::BigRational;
    use num_traits::Zero;
    let n = part.n_blocks();
    for i in 0..n {
        for j in 0..n {
            let mut acc = BigRational::zero();
            for t in 0..n {
                let cnt = solution_count(part, tensor, &[i, j, t, part.inverse_block[t]]);
                acc += BigRational::new(cnt, BigInt::from(part.sizes[t]));
            }
            if !acc.is_integer() || acc.to_integer() != *gram.p.at(i, j) {
                return Err(fail(format!(
                    "weighted count route disagrees with Tr(A_i A_j) at ({}, {})",
                    i, j
                )));
            }
        }
    }
    Ok(())
}

fn check_frobenius_roundtrip(
    table: &CharacterTable,
    g: &FiniteGroup,
    stack: &Stack,
) -> Result<()> {
    let pt = partition_character_table(table, &stack.part, &stack.rep, &stack.gram, &stack.tensor, g)?;
    let forms = frobenius_polynomial(&pt)?;
    let recovered = table_from_frobenius(&forms)?;
    if recovered.raw() != stack.tensor.raw() {
        return Err(fail("tensor recovered from the forms differs".into()));
    }
    // degrees recomputed from the recovered tensor agree
    let rep2 = regular_representation(&recovered, &stack.part)?;
    let gram2 = gram_matrix(&rep2)?;
    let (d1, _) = degree_polynomial_both(g, &stack.rep, &stack.part, &stack.gram, &stack.tensor)?;
    let (d2, _) = degree_polynomial_both(g, &rep2, &stack.part, &gram2, &recovered)?;
    if d1 != d2 {
        return Err(fail("degree polynomial changed through the round trip".into()));
    }
    // multiplicity sum carries the collapsed-determinant meaning on full
    // partitions with singleton identity block
    if stack.part.identity_block_is_singleton() {
        let total: u64 = forms.mults.iter().sum();
        if total != stack.part.covered_order {
            return Err(fail(format!(
                "multiplicities sum to {} instead of {}",
                total, stack.part.covered_order
            )));
        }
    }
    Ok(())
}

fn check_commutators(
    g: &FiniteGroup,
    classes: &ClassData,
    stack: &Stack,
) -> Result<()> {
    for convention in [Convention::Partition, Convention::Ordinary] {
        let a = commutator_counts(&stack.part, &stack.tensor, &stack.rep, convention)?;
        if g.order() <= 200 {
            let b = brute_counts(g, classes, &stack.part, convention, 3)?;
            if a.p1 != b.p1 || a.p2 != b.p2 || a.p3 != b.p3 {
                return Err(fail(format!(
                    "tensor-derived {} counts disagree with brute force",
                    convention.tag()
                )));
            }
        }
    }
    // closed-form per-element multiplicity vs direct commutator counting
    if stack.part.kind == PartitionKind::Trivial && g.order() <= 200 {
        let mut w = vec![0u64; g.order()];
        for s in 0..g.order() {
            for r in 0..g.order() {
                w[g.mul(g.mul(g.inv_of(s), g.inv_of(r)), g.mul(s, r))] += 1;
            }
        }
        for i in 0..classes.n_classes {
            let closed = class_commutator_multiplicity(&stack.part, &stack.tensor, i)?;
            if closed != BigInt::from(w[classes.reps[i] as usize]) {
                return Err(fail(format!(
                    "closed-form commutator multiplicity fails on class {}",
                    i
                )));
            }
        }
    }
    Ok(())
}

fn check_reconstruction(
    table: &CharacterTable,
    g: &FiniteGroup,
    stack: &Stack,
) -> Result<()> {
    let counts = commutator_counts(&stack.part, &stack.tensor, &stack.rep, Convention::Partition)?;
    let recon = reconstruct_from_triples(&counts, &stack.part, exponent(g))?;
    let pt = partition_character_table(table, &stack.part, &stack.rep, &stack.gram, &stack.tensor, g)?;
    let forms = frobenius_polynomial(&pt)?;
    let direct = reduce_forms_at(&forms, recon.p, recon.zeta);
    let mut recovered: Vec<(Vec<u64>, u64)> = recon
        .columns
        .iter()
        .cloned()
        .zip(recon.d.iter().copied())
        .collect();
    recovered.sort();
    if direct != recovered {
        return Err(fail("reconstructed forms differ from the direct ones".into()));
    }
    Ok(())
}

fn check_lattice(g: &FiniteGroup, classes: &ClassData, trivial: &Stack) -> Result<()> {
    let lat = normal_subgroup_lattice(&trivial.tensor, &trivial.part)?;
    let mut got: Vec<Vec<usize>> = lat.nodes.iter().map(|(c, _)| c.clone()).collect();
    got.sort();
    let want = normal_subgroups_bruteforce(g, classes);
    if got != want {
        return Err(fail("lattice differs from brute-force enumeration".into()));
    }
    Ok(())
}

fn check_mckay(g: &FiniteGroup) -> Result<()> {
    let order = g.order() as u64;
    let mut rest = order;
    let mut d = 2u64;
    let mut primes = Vec::new();
    while d * d <= rest {
        if rest % d == 0 {
            primes.push(d);
            while rest % d == 0 {
                rest /= d;
            }
        }
        d += 1;
    }
    if rest > 1 {
        primes.push(rest);
    }
    for &p in &primes {
        let v = mckay_check(g, p, &[1], 0)?;
        if !v.equal {
            return Err(fail(format!(
                "p'-degree polynomials differ at p = {}: G gives {} and N gives {}",
                p,
                v.side_g.pprime.render(),
                v.side_n.pprime.render()
            )));
        }
    }
    Ok(())
}

/// Run every check the engine knows on a single group.
pub fn run_all(g: &FiniteGroup, seed: u64) -> VerifyReport {
    let mut report = VerifyReport { group: g.origin.clone(), items: Vec::new() };
    let classes = conjugacy_classes(g);
    report.check("group invariants", check_group_invariants(g, &classes));

    let trivial = match build_stack(g, &classes, &PartitionKind::Trivial) {
        Ok(s) => s,
        Err(e) => {
            report.check("trivial partition stack", Err(e));
            return report;
        }
    };

    // all partitions in the collection are good with nonzero Gram
    // determinant
    let kinds = match partition_collection(g, &classes, &trivial) {
        Ok(k) => k,
        Err(e) => {
            report.check("partition collection", Err(e));
            return report;
        }
    };
    let mut stacks: Vec<(PartitionKind, Stack)> = Vec::new();
    let mut partitions_ok = Ok(());
    for kind in &kinds {
        match build_stack(g, &classes, kind) {
            Ok(stack) => {
                let validation = validate_good_partition(g, &classes, &stack.part.blocks);
                if !validation.passed() {
                    partitions_ok = Err(fail(format!(
                        "partition {:?} failed validation",
                        kind.tag()
                    )));
                    break;
                }
                stacks.push((kind.clone(), stack));
            }
            Err(e) => {
                partitions_ok = Err(fail(format!("partition {}: {}", kind.tag(), e)));
                break;
            }
        }
    }
    report.check("good partitions and semisimplicity", partitions_ok);

    report.check(
        "tensor count invariants",
        stacks
            .iter()
            .try_for_each(|(_, s)| check_tensor_invariants(&s.part, &s.tensor, seed)),
    );
    report.check(
        "gram matrix from weighted counts",
        stacks
            .iter()
            .try_for_each(|(_, s)| check_gram_from_counts(&s.part, &s.tensor, &s.gram)),
    );

    let table = match lift_character_table(
        g,
        &classes,
        &trivial.part,
        &trivial.tensor,
        &trivial.rep,
        &trivial.gram,
    ) {
        Ok(t) => t,
        Err(e) => {
            report.check("character table lift", Err(e));
            return report;
        }
    };
    report.check("character table lift", Ok(()));

    // class sizes recomputed from the exact table alone
    report.check("class sizes from table", {
        let mut result = Ok(());
        for i in 0..classes.n_classes {
            let mut acc = crate::cyclotomic::Cyc::zero(table.m as usize);
            for t in 0..table.n {
                acc = acc.add(&table.values[t][i].mul(&table.values[t][classes.inverse_class[i]]));
            }
            // sum_t chi(g_i) chi(g_i^-1) = |G| / l_i
            let expect = crate::cyclotomic::Cyc::from_rational(
                table.m as usize,
                num_rational::BigRational::new(
                    BigInt::from(g.order()),
                    BigInt::from(classes.sizes[i]),
                ),
            );
            if !acc.sub(&expect).is_zero_exact() {
                result = Err(fail(format!("class {} size is not recoverable", i)));
                break;
            }
        }
        result
    });

    let mut suite_ok = Ok(());
    for (kind, stack) in &stacks {
        if stack.part.covered_order != g.order() as u64 {
            // subgroup-classes partitions carry the subgroup's character
            // theory; their tensor-level checks already ran above
            continue;
        }
        match partition_character_table(&table, &stack.part, &stack.rep, &stack.gram, &stack.tensor, g)
        {
            Ok(pt) => {
                let rep = identity_suite(&pt, &stack.part, &stack.tensor, &stack.gram);
                if !rep.passed() {
                    suite_ok = Err(fail(format!(
                        "identity suite failed on {}: {:?}",
                        kind.tag(),
                        rep.items
                            .iter()
                            .filter(|(_, ok, _)| !ok)
                            .collect::<Vec<_>>()
                    )));
                    break;
                }
            }
            Err(e) => {
                suite_ok = Err(fail(format!("partition table {}: {}", kind.tag(), e)));
                break;
            }
        }
    }
    report.check("orthogonality and identity suite", suite_ok);

    report.check(
        "degree polynomial routes agree",
        stacks.iter().try_for_each(|(_, s)| {
            degree_polynomial_both(g, &s.rep, &s.part, &s.gram, &s.tensor).map(|_| ())
        }),
    );

    report.check(
        "frobenius round trips",
        stacks
            .iter()
            .filter(|(kind, _)| {
                matches!(kind, PartitionKind::Trivial | PartitionKind::Rational)
            })
            .try_for_each(|(_, s)| check_frobenius_roundtrip(&table, g, s)),
    );

    report.check("commutator counts", check_commutators(g, &classes, &trivial));

    if trivial.part.n_blocks() <= 12 {
        report.check("reconstruction from triples", check_reconstruction(&table, g, &trivial));
    }

    if g.order() <= 100 && classes.n_classes <= 25 {
        report.check("normal-subgroup lattice", check_lattice(g, &classes, &trivial));
    }

    if g.order() > 1 {
        report.check("mckay comparisons", check_mckay(g));
    }

    if g.order() <= 60 {
        report.check(
            "group determinant factorization",
            (|| {
                for (_, stack) in stacks.iter().filter(|(kind, _)| {
                    matches!(kind, PartitionKind::Trivial | PartitionKind::Rational)
                }) {
                    let pt = partition_character_table(
                        &table,
                        &stack.part,
                        &stack.rep,
                        &stack.gram,
                        &stack.tensor,
                        g,
                    )?;
                    let forms = frobenius_polynomial(&pt)?;
                    let rep = group_determinant_check(g, &classes, &stack.part, &forms, 20, seed)?;
                    if !rep.all_match || !rep.mult_sum_matches {
                        return Err(fail(format!("{:?}", rep.failures)));
                    }
                }
                Ok(())
            })(),
        );
    }

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{load_group, GroupSource, DEFAULT_ORDER_BOUND};

    #[test]
    fn verify_all_s3() {
        let g = load_group(&GroupSource::Builtin("Sn:3".into()), DEFAULT_ORDER_BOUND).unwrap();
        let report = run_all(&g, 0);
        assert!(report.passed(), "{:?}", report.items);
    }

    #[test]
    fn verify_all_q8() {
        let g = load_group(&GroupSource::Builtin("Q8".into()), DEFAULT_ORDER_BOUND).unwrap();
        let report = run_all(&g, 0);
        assert!(report.passed(), "{:?}", report.items);
    }

    #[test]
    fn verify_all_trivial_group() {
        let g = load_group(&GroupSource::Builtin("Zn:1".into()), DEFAULT_ORDER_BOUND).unwrap();
        let report = run_all(&g, 0);
        assert!(report.passed(), "{:?}", report.items);
    }
}
