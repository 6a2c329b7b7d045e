//! Exact character data for partition algebras.
//!
//! The pipeline is Dixon-flavored: simultaneously diagonalize the
//! regular-representation matrices over Z/p for a prime p ≡ 1 (mod exp G)
//! with p > |G|, extract the degree products d_t = f_t e_t from the
//! weighted trace formula, then lift exact cyclotomic character values by
//! inverse discrete Fourier sums over the power map. General partitions
//! derive their block-sum character values from the trivial-partition
//! table, with the independent mod-p eigen system retained as a
//! cross-check.

use crate::arith::{perfect_sqrt, prime_one_mod, SplitMix64};
use crate::class_algebra::{GramMatrix, RegularRep};
use crate::cyclotomic::Cyc;
use crate::error::{Error, Result};
use crate::group::{exponent, ClassData, FiniteGroup};
use crate::modp::{addm, element_of_order, invm, mulm, powm, MatP};
use crate::partition::{solution_count, GoodPartition, PartitionKind, StructTensor};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// The one-dimensional representations of the partition algebra over Z/p:
/// column t maps the block sum C_i to lambda\[t]\[i].
#[derive(Clone, Debug)]
pub struct ModularEigenSystem {
    pub p: u64,
    /// Exponent of the ambient group.
    pub m: u64,
    /// Fixed element of order m in Z/p.
    pub zeta: u64,
    /// columns\[t]\[i] = lambda_{it}; sorted lexicographically, pairwise
    /// distinct.
    pub columns: Vec<Vec<u64>>,
}

/// Deterministic prime choice for a group: smallest p ≡ 1 (mod m) with
/// p > |G|, which makes the mod-p class algebra split semisimple and lets
/// degree products and Fourier multiplicities lift uniquely.
pub fn dixon_prime(g: &FiniteGroup) -> u64 {
    let m = exponent(g);
    prime_one_mod(m, g.order() as u64)
}

pub fn eigen_system_mod_p(
    g: &FiniteGroup,
    rep: &RegularRep,
    part: &GoodPartition,
    tensor: &StructTensor,
) -> Result<ModularEigenSystem> {
    let m = exponent(g);
    let p = dixon_prime(g);
    let zeta = element_of_order(m, p);
    let n = rep.n;
    let mats: Vec<MatP> = rep
        .raw
        .iter()
        .map(|rows| MatP::from_i64(n, n, rows.iter().copied(), p))
        .collect();
    let columns = crate::modp::simultaneous_eigencolumns(&mats, p, 0x01d1ac)?;
    if columns.len() != n {
        return Err(Error::Modular(format!(
            "expected {} distinct eigen columns, found {}",
            n,
            columns.len()
        )));
    }
    // definition equations: lambda_j lambda_l = sum_i a_{ijl} lambda_i
    for col in &columns {
        for j in 0..n {
            for l in 0..n {
                let lhs = mulm(col[j], col[l], p);
                let mut rhs = 0u64;
                for i in 0..n {
                    rhs = addm(rhs, mulm(crate::modp::redm(tensor.at(i, j, l), p), col[i], p), p);
                }
                if lhs != rhs {
                    return Err(Error::Modular(format!(
                        "eigen column violates the definition equations at ({}, {})",
                        j, l
                    )));
                }
            }
        }
        // the algebra identity acts as 1
        let mut id = 0u64;
        for (i, c) in part.identity_coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let num = big_mod(c.numer(), p);
            let den = big_mod(c.denom(), p);
            id = addm(id, mulm(mulm(num, invm(den, p), p), col[i], p), p);
        }
        if id != 1 {
            return Err(Error::Modular(
                "eigen column does not send the algebra identity to 1".into(),
            ));
        }
    }
    Ok(ModularEigenSystem { p, m, zeta, columns })
}

fn big_mod(v: &BigInt, p: u64) -> u64 {
    use num_integer::Integer;
    v.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

/// Degree products d_t = f_t e_t per eigen column (weighted trace sum),
/// lifted to integers in \[1, covered order]. For trivial partitions the
/// split f_t = e_t = sqrt(d_t) is returned as well.
#[derive(Clone, Debug)]
pub struct DegreeData {
    pub d: Vec<u64>,
    /// f_t for trivial partitions, where e_t = f_t.
    pub trivial_degrees: Option<Vec<u64>>,
}

pub fn degrees_and_multiplicities(
    eigen: &ModularEigenSystem,
    gram: &GramMatrix,
    part: &GoodPartition,
) -> Result<DegreeData> {
    let p = eigen.p;
    let n = part.n_blocks();
    let ell = part.covered_order;
    let ell_mod = ell % p;
    let mut d = Vec::with_capacity(eigen.columns.len());
    for col in &eigen.columns {
        let mut s = 0u64;
        for gamma in 0..n {
            let pg = big_mod(&gram.p_vec[gamma], p);
            let term = mulm(mulm(col[gamma], pg, p), invm(part.sizes[gamma] % p, p), p);
            s = addm(s, term, p);
        }
        if s == 0 {
            return Err(Error::Modular(
                "degree denominator vanished mod p, contradicting semisimplicity".into(),
            ));
        }
        let dt = mulm(ell_mod, invm(s, p), p);
        if dt == 0 || dt > ell {
            return Err(Error::Modular(format!(
                "degree product {} fails to lift into [1, {}]",
                dt, ell
            )));
        }
        d.push(dt);
    }
    let trivial_degrees = if part.kind == PartitionKind::Trivial {
        let mut fs = Vec::with_capacity(d.len());
        for &dt in &d {
            let f = perfect_sqrt(dt).ok_or_else(|| {
                Error::Modular(format!(
                    "trivial-partition degree product {} is not a perfect square",
                    dt
                ))
            })?;
            fs.push(f);
        }
        Some(fs)
    } else {
        None
    };
    Ok(DegreeData { d, trivial_degrees })
}

// ---------------------------------------------------------------------------
// exact character table (trivial partition)
// ---------------------------------------------------------------------------

/// Exact ordinary character table. Rows are characters, columns are
/// conjugacy classes; values are cyclotomic integers in the power basis of
/// a primitive m-th root of unity.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub n: usize,
    pub order: u64,
    pub m: u64,
    pub degrees: Vec<u64>,
    /// values\[t]\[i] = chi_t(g_i).
    pub values: Vec<Vec<Cyc>>,
    pub class_sizes: Vec<u64>,
    pub inverse_class: Vec<usize>,
    pub rep_orders: Vec<u64>,
    /// power_classes\[i]\[j] = class of g_i^j, j in 0..rep_orders\[i].
    pub power_classes: Vec<Vec<usize>>,
    /// Mod-p shadow: chi values reduced at zeta of order m.
    pub shadow_p: u64,
    pub shadow_zeta: u64,
    pub shadow_chi: Vec<Vec<u64>>,
}

impl CharacterTable {
    /// Exact eigenvalue zeta_{it} = l_i chi_t(g_i) / f_t of the class-sum
    /// matrix A_i in representation t.
    pub fn eigenvalue(&self, t: usize, i: usize) -> Cyc {
        self.values[t][i].scale(&BigRational::new(
            BigInt::from(self.class_sizes[i]),
            BigInt::from(self.degrees[t]),
        ))
    }

    /// Row t twisted by the Galois map xi -> xi^s.
    pub fn galois_twist_row(&self, t: usize, s: u64) -> Vec<Cyc> {
        self.values[t].iter().map(|v| v.galois(s % self.m)).collect()
    }
}

/// Lift the exact ordinary character table from the modular eigen system.
pub fn lift_character_table(
    g: &FiniteGroup,
    classes: &ClassData,
    part: &GoodPartition,
    tensor: &StructTensor,
    rep: &RegularRep,
    gram: &GramMatrix,
) -> Result<CharacterTable> {
    if part.kind != PartitionKind::Trivial {
        return Err(Error::Unsupported(
            "exact value lifting is defined on the trivial partition; other \
             partitions block-sum the trivial table"
                .into(),
        ));
    }
    let eigen = eigen_system_mod_p(g, rep, part, tensor)?;
    let deg = degrees_and_multiplicities(&eigen, gram, part)?;
    let fs = deg.trivial_degrees.as_ref().expect("trivial partition");
    let n = part.n_blocks();
    let p = eigen.p;
    let zeta = eigen.zeta;
    let m = eigen.m;
    let order = g.order() as u64;

    // sort characters by (degree, shadow row) for determinism
    let shadow_of = |t: usize| -> Vec<u64> {
        (0..n)
            .map(|i| {
                mulm(
                    mulm(fs[t] % p, eigen.columns[t][i], p),
                    invm(classes.sizes[i] % p, p),
                    p,
                )
            })
            .collect()
    };
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by_key(|&t| (fs[t], shadow_of(t)));

    let power_classes: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..classes.rep_orders[i])
                .map(|j| classes.power_class(g, i, j))
                .collect()
        })
        .collect();

    let mut degrees = Vec::with_capacity(n);
    let mut shadow_chi = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);
    for &t in &idx {
        let f = fs[t];
        let chi_bar = shadow_of(t);
        let mut row = Vec::with_capacity(n);
        for i in 0..n {
            let o = classes.rep_orders[i];
            let omega = powm(zeta, m / o, p);
            let omega_inv = invm(omega, p);
            let o_inv = invm(o % p, p);
            let mut value = Cyc::zero(m as usize);
            let mut recomposed = 0u64;
            for k in 0..o {
                // m_k = (1/o) sum_j chi(g_i^j) omega^{-jk}
                let mut s = 0u64;
                for (j, &pc) in power_classes[i].iter().enumerate() {
                    let w = powm(omega_inv, (j as u64 * k) % o, p);
                    s = addm(s, mulm(chi_bar[pc], w, p), p);
                }
                let mk = mulm(s, o_inv, p);
                if mk > f {
                    return Err(Error::Modular(format!(
                        "Fourier multiplicity {} exceeds the degree {}; wrong prime \
                         or mislabeled eigen column",
                        mk, f
                    )));
                }
                if mk != 0 {
                    let exp = (k as usize) * (m as usize / o as usize);
                    value = value.add(&Cyc::root_power(m as usize, exp).scale_int(mk as i64));
                    recomposed = addm(recomposed, mulm(mk, powm(omega, k, p), p), p);
                }
            }
            if recomposed != chi_bar[i] {
                return Err(Error::Modular(
                    "Fourier lift does not recompose to the modular value".into(),
                ));
            }
            row.push(value);
        }
        degrees.push(f);
        shadow_chi.push(chi_bar);
        values.push(row);
    }

    let table = CharacterTable {
        n,
        order,
        m,
        degrees,
        values,
        class_sizes: classes.sizes.clone(),
        inverse_class: classes.inverse_class.clone(),
        rep_orders: classes.rep_orders.clone(),
        power_classes,
        shadow_p: p,
        shadow_zeta: zeta,
        shadow_chi,
    };
    verify_lifted_table(&table, tensor, rep, &eigen)?;
    Ok(table)
}

fn verify_lifted_table(
    table: &CharacterTable,
    tensor: &StructTensor,
    rep: &RegularRep,
    eigen: &ModularEigenSystem,
) -> Result<()> {
    let n = table.n;
    let m = table.m as usize;
    for &f in &table.degrees {
        if table.order % f != 0 {
            return Err(Error::VerificationFailed(format!(
                "degree {} does not divide the group order {}",
                f, table.order
            )));
        }
    }
    for t in 0..n {
        if table.values[t][0].as_integer() != Some(BigInt::from(table.degrees[t])) {
            return Err(Error::VerificationFailed(
                "character value at the identity differs from the degree".into(),
            ));
        }
    }
    // columns of the reduced exact table biject onto the eigen columns
    let mut reduced: Vec<Vec<u64>> = (0..n)
        .map(|t| {
            (0..n)
                .map(|i| table.eigenvalue(t, i).eval_modp(eigen.p, eigen.zeta))
                .collect()
        })
        .collect();
    reduced.sort();
    if reduced != eigen.columns {
        return Err(Error::VerificationFailed(
            "exact table does not reduce onto the modular eigen system".into(),
        ));
    }
    // definition equations: l_i l_j chi_i chi_j = f sum_l a_{lij} l_l chi_l
    for t in 0..n {
        for i in 0..n {
            for j in 0..n {
                let lhs = table.values[t][i]
                    .mul(&table.values[t][j])
                    .scale_int((table.class_sizes[i] * table.class_sizes[j]) as i64);
                let mut rhs = Cyc::zero(m);
                for l in 0..n {
                    let a = tensor.at(l, i, j);
                    if a != 0 {
                        rhs = rhs
                            .add(&table.values[t][l].scale_int(a * table.class_sizes[l] as i64));
                    }
                }
                let rhs = rhs.scale_int(table.degrees[t] as i64);
                if !lhs.eq_modular(&rhs) {
                    return Err(Error::VerificationFailed(format!(
                        "definition equations fail at (t={}, i={}, j={})",
                        t, i, j
                    )));
                }
            }
        }
    }
    // eigenvalues are algebraic integers: monic integer charpoly membership
    for (i, mat) in rep.matrices.iter().enumerate() {
        let cp = mat.charpoly();
        for t in 0..n {
            let z = table.eigenvalue(t, i);
            let mut acc = Cyc::zero(m);
            let mut pow = Cyc::one(m);
            for c in &cp {
                if !c.is_zero() {
                    acc = acc.add(&pow.scale(&BigRational::from_integer(c.clone())));
                }
                pow = pow.mul(&z);
            }
            if !acc.is_zero_exact() {
                return Err(Error::VerificationFailed(format!(
                    "eigenvalue ({}, {}) is not a root of the class matrix charpoly",
                    t, i
                )));
            }
            if z.abs_complex() > table.class_sizes[i] as f64 + 1e-6 {
                return Err(Error::VerificationFailed(
                    "eigenvalue exceeds the class size in absolute value".into(),
                ));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// partition character tables (block sums of the trivial table)
// ---------------------------------------------------------------------------

/// Character data of a general partition algebra: block-sum values of the
/// ordinary characters lying over each simple column, with degrees,
/// multiplicities and orbit sizes.
#[derive(Clone, Debug)]
pub struct PartitionTable {
    pub n: usize,
    pub m: u64,
    /// Covered order L (equals |G| except for subgroup-classes kinds).
    pub covered_order: u64,
    pub block_sizes: Vec<u64>,
    pub inverse_block: Vec<usize>,
    /// chi^P values: values\[t]\[b] = block sum of l_c chi_t(g_c).
    pub values: Vec<Vec<Cyc>>,
    /// lambda\[t]\[b] = values\[t]\[b] / f_t, the eigen column.
    pub lambda: Vec<Vec<Cyc>>,
    /// Degree f_t of the ordinary characters over column t.
    pub degrees: Vec<u64>,
    /// Number of ordinary characters collapsing onto column t.
    pub orbit_sizes: Vec<u64>,
    /// d_t = f_t e_t from the modular weighted trace.
    pub d: Vec<u64>,
    /// e_t = d_t / f_t.
    pub mults: Vec<u64>,
    /// Indices (into the trivial table) of the ordinary characters over
    /// each column.
    pub ordinary_members: Vec<Vec<usize>>,
    pub shadow_p: u64,
    pub shadow_zeta: u64,
}

pub fn partition_character_table(
    table: &CharacterTable,
    part: &GoodPartition,
    part_rep: &RegularRep,
    part_gram: &GramMatrix,
    part_tensor: &StructTensor,
    g: &FiniteGroup,
) -> Result<PartitionTable> {
    if part.covered_order != g.order() as u64 {
        // a partition of the classes inside a proper subgroup N carries
        // the character theory of N, not of G; induce N and use its own
        // partitions instead
        return Err(Error::Unsupported(
            "block-sum character tables are defined for partitions covering \
             all conjugacy classes"
                .into(),
        ));
    }
    let n_ord = table.n;
    let nb = part.n_blocks();
    let m = table.m as usize;
    let p = table.shadow_p;
    let zeta = table.shadow_zeta;

    // exact block sums of the eigenvalues: restriction of each ordinary
    // simple to the partition algebra
    let mut restrictions: Vec<(usize, Vec<Cyc>, Vec<u64>)> = Vec::new();
    for t in 0..n_ord {
        let mut row = Vec::with_capacity(nb);
        let mut row_mod = Vec::with_capacity(nb);
        for b in 0..nb {
            let mut acc = Cyc::zero(m);
            for &c in &part.blocks[b] {
                acc = acc.add(&table.eigenvalue(t, c));
            }
            row_mod.push(acc.eval_modp(p, zeta));
            row.push(acc);
        }
        // the restriction is either a simple column (identity acts as 1)
        // or the zero map (the simple kills the partition algebra)
        let mut id = 0u64;
        for (b, coeff) in part.identity_coeffs.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let num = big_mod(coeff.numer(), p);
            let den = big_mod(coeff.denom(), p);
            id = addm(id, mulm(mulm(num, invm(den, p), p), row_mod[b], p), p);
        }
        match id {
            1 => restrictions.push((t, row, row_mod)),
            0 => {
                if row_mod.iter().any(|&v| v != 0) {
                    return Err(Error::VerificationFailed(
                        "nonzero restriction does not normalize the identity to 1".into(),
                    ));
                }
            }
            _ => {
                return Err(Error::VerificationFailed(
                    "restriction sends the algebra identity to neither 0 nor 1".into(),
                ));
            }
        }
    }

    // group restrictions by equal shadow rows, then confirm exact equality
    let mut groups: Vec<(Vec<u64>, Vec<usize>)> = Vec::new();
    for (t, row, row_mod) in &restrictions {
        match groups.iter_mut().find(|(key, _)| key == row_mod) {
            Some((_, members)) => {
                let first = restrictions.iter().find(|(t0, _, _)| *t0 == members[0]).unwrap();
                for b in 0..nb {
                    if !row[b].eq_exact(&first.1[b]) {
                        return Err(Error::VerificationFailed(
                            "shadow collision between distinct exact restrictions".into(),
                        ));
                    }
                }
                members.push(*t);
            }
            None => groups.push((row_mod.clone(), vec![*t])),
        }
    }
    groups.sort_by(|a, b| a.0.cmp(&b.0));
    if groups.len() != nb {
        return Err(Error::VerificationFailed(format!(
            "{} distinct restrictions for an n={} partition algebra",
            groups.len(),
            nb
        )));
    }

    // independent modular eigen system of the partition algebra
    let eigen = eigen_system_mod_p(g, part_rep, part, part_tensor)?;
    let shadow_cols: Vec<Vec<u64>> = groups.iter().map(|(key, _)| key.clone()).collect();
    if shadow_cols != eigen.columns {
        return Err(Error::VerificationFailed(
            "block-summed table does not match the partition eigen system".into(),
        ));
    }
    let deg = degrees_and_multiplicities(&eigen, part_gram, part)?;
    let d_by_shadow: std::collections::BTreeMap<Vec<u64>, u64> = eigen
        .columns
        .iter()
        .cloned()
        .zip(deg.d.iter().copied())
        .collect();

    let mut values = Vec::with_capacity(nb);
    let mut lambda = Vec::with_capacity(nb);
    let mut degrees = Vec::with_capacity(nb);
    let mut orbit_sizes = Vec::with_capacity(nb);
    let mut d_out = Vec::with_capacity(nb);
    let mut mults = Vec::with_capacity(nb);
    let mut ordinary_members = Vec::with_capacity(nb);
    for (key, members) in &groups {
        let f = table.degrees[members[0]];
        if members.iter().any(|&t| table.degrees[t] != f) {
            return Err(Error::VerificationFailed(
                "characters over one partition column have unequal degrees".into(),
            ));
        }
        let t0 = members[0];
        let lam: Vec<Cyc> = restrictions
            .iter()
            .find(|(t, _, _)| *t == t0)
            .map(|(_, row, _)| row.clone())
            .unwrap();
        let vals: Vec<Cyc> = lam.iter().map(|v| v.scale_int(f as i64)).collect();
        let dt = *d_by_shadow
            .get(key)
            .ok_or_else(|| Error::VerificationFailed("missing degree product".into()))?;
        if dt % f != 0 {
            return Err(Error::VerificationFailed(format!(
                "degree product {} is not a multiple of the degree {}",
                dt, f
            )));
        }
        values.push(vals);
        lambda.push(lam);
        degrees.push(f);
        orbit_sizes.push(members.len() as u64);
        d_out.push(dt);
        mults.push(dt / f);
        ordinary_members.push(members.clone());
    }

    // Galois kinds: d_t = f_t^2 o_t, so the multiplicity is o_t f_t
    match part.kind {
        PartitionKind::Galois(_) | PartitionKind::Rational | PartitionKind::Trivial => {
            for t in 0..nb {
                if d_out[t] != degrees[t] * degrees[t] * orbit_sizes[t] {
                    return Err(Error::VerificationFailed(format!(
                        "column {}: d = {} but f^2 o = {}",
                        t,
                        d_out[t],
                        degrees[t] * degrees[t] * orbit_sizes[t]
                    )));
                }
            }
        }
        _ => {}
    }

    Ok(PartitionTable {
        n: nb,
        m: table.m,
        covered_order: part.covered_order,
        block_sizes: part.sizes.clone(),
        inverse_block: part.inverse_block.clone(),
        values,
        lambda,
        degrees,
        orbit_sizes,
        d: d_out,
        mults,
        ordinary_members,
        shadow_p: p,
        shadow_zeta: zeta,
    })
}

// ---------------------------------------------------------------------------
// identity suite
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub items: Vec<(String, bool, String)>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|(_, ok, _)| *ok)
    }

    fn push(&mut self, name: &str, ok: bool, detail: String) {
        self.items.push((name.to_string(), ok, detail));
    }
}

/// Exhaustive exact verification of the orthogonality relations, the
/// weighted solution-count identity (all tuples r <= 3, sampled r = 4),
/// and the Gram-vs-table trace identity.
pub fn identity_suite(
    pt: &PartitionTable,
    part: &GoodPartition,
    tensor: &StructTensor,
    gram: &GramMatrix,
) -> IdentityReport {
    let n = pt.n;
    let m = pt.m as usize;
    let ell = BigInt::from(pt.covered_order);
    let mut report = IdentityReport { items: Vec::new() };

    // row orthogonality: sum_l (e_l/f_l) chi_{il} chi_{jl} = [j = i'] L l_i
    let mut ok = true;
    let mut detail = String::new();
    'rows: for i in 0..n {
        for j in 0..n {
            let mut acc = Cyc::zero(m);
            for l in 0..n {
                let w = BigRational::new(BigInt::from(pt.mults[l]), BigInt::from(pt.degrees[l]));
                acc = acc.add(&pt.values[l][i].mul(&pt.values[l][j]).scale(&w));
            }
            let expect = if pt.inverse_block[i] == j {
                Cyc::from_bigint(m, &ell * BigInt::from(pt.block_sizes[i]))
            } else {
                Cyc::zero(m)
            };
            if !acc.sub(&expect).is_zero_exact() {
                ok = false;
                detail = format!("fails at (i={}, j={})", i, j);
                break 'rows;
            }
        }
    }
    report.push("row orthogonality", ok, detail);

    // column orthogonality: sum_i chi_{ij} chi_{i'l} / l_i = [j = l] L f_j / e_j
    let mut ok = true;
    let mut detail = String::new();
    'cols: for j in 0..n {
        for l in 0..n {
            let mut acc = Cyc::zero(m);
            for i in 0..n {
                let w = BigRational::new(BigInt::one(), BigInt::from(pt.block_sizes[i]));
                acc = acc.add(
                    &pt.values[j][i]
                        .mul(&pt.values[l][pt.inverse_block[i]])
                        .scale(&w),
                );
            }
            let expect = if j == l {
                Cyc::from_rational(
                    m,
                    BigRational::new(&ell * BigInt::from(pt.degrees[j]), BigInt::from(pt.mults[j])),
                )
            } else {
                Cyc::zero(m)
            };
            if !acc.sub(&expect).is_zero_exact() {
                ok = false;
                detail = format!("fails at (j={}, l={})", j, l);
                break 'cols;
            }
        }
    }
    report.push("column orthogonality", ok, detail);

    // regular-character relations, meaningful when block 0 = {identity}
    if part.identity_block_is_singleton() {
        let mut ok = true;
        let mut detail = String::new();
        for i in 0..n {
            let mut acc = Cyc::zero(m);
            for l in 0..n {
                acc = acc.add(&pt.values[l][i].scale_int(pt.mults[l] as i64));
            }
            let expect = if i == 0 { Cyc::from_bigint(m, ell.clone()) } else { Cyc::zero(m) };
            if !acc.sub(&expect).is_zero_exact() {
                ok = false;
                detail = format!("fails at block {}", i);
                break;
            }
        }
        report.push("regular character", ok, detail);
    }

    // weighted solution counts: L l_{i1..ir} = sum_l e_l/f_l^{r-1} prod chi
    let mut ok = true;
    let mut detail = String::new();
    let mut tuples: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            tuples.push(vec![i, j]);
            for k in 0..n {
                tuples.push(vec![i, j, k]);
            }
        }
    }
    let mut rng = SplitMix64::new(0x51d7e);
    for _ in 0..24.min(n * n) {
        let t: Vec<usize> = (0..4).map(|_| rng.below(n as u64) as usize).collect();
        tuples.push(t);
    }
    for tuple in &tuples {
        let lhs = Cyc::from_bigint(m, &ell * solution_count(part, tensor, tuple));
        let mut rhs = Cyc::zero(m);
        for l in 0..n {
            let mut prod = Cyc::one(m);
            for &i in tuple {
                prod = prod.mul(&pt.values[l][i]);
            }
            let mut fpow = BigInt::one();
            for _ in 0..tuple.len() - 1 {
                fpow *= BigInt::from(pt.degrees[l]);
            }
            rhs = rhs.add(&prod.scale(&BigRational::new(BigInt::from(pt.mults[l]), fpow)));
        }
        if !lhs.sub(&rhs).is_zero_exact() {
            ok = false;
            detail = format!("fails at tuple {:?}", tuple);
            break;
        }
    }
    report.push("weighted solution-count identity", ok, detail);

    // Gram versus table: p_{ij} = sum_l chi_{il} chi_{jl} / f_l^2
    let mut ok = true;
    let mut detail = String::new();
    'gram: for i in 0..n {
        for j in 0..n {
            let mut acc = Cyc::zero(m);
            for l in 0..n {
                let w = BigRational::new(BigInt::one(), BigInt::from(pt.degrees[l] * pt.degrees[l]));
                acc = acc.add(&pt.values[l][i].mul(&pt.values[l][j]).scale(&w));
            }
            let expect = Cyc::from_bigint(m, gram.p.at(i, j).clone());
            if !acc.sub(&expect).is_zero_exact() {
                ok = false;
                detail = format!("fails at (i={}, j={})", i, j);
                break 'gram;
            }
        }
    }
    report.push("gram matrix from table", ok, detail);

    report
}
