//! Concrete finite groups as Cayley tables, plus conjugacy classes, power
//! maps, Sylow subgroups and normalizers. The Cayley table is the single
//! canonical representation: permutation and builtin inputs are converted
//! eagerly because every downstream count is a nested loop over element
//! indices.

use crate::arith::{lcm_u64, SplitMix64};
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::PathBuf;

pub const DEFAULT_ORDER_BOUND: usize = 20_000;

/// Exhaustive associativity checking is O(n^3); above this order we sample.
const EXHAUSTIVE_ASSOC_LIMIT: usize = 512;

#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    pub origin: String,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup(order={}, origin={})", self.order, self.origin)
    }
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv_of(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// Identity is always internal index 0.
    pub const IDENTITY: usize = 0;

    pub fn pow(&self, g: usize, k: u64) -> usize {
        let mut acc = Self::IDENTITY;
        let mut base = g;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, g: usize) -> u64 {
        let mut x = g;
        let mut n = 1u64;
        while x != Self::IDENTITY {
            x = self.mul(x, g);
            n += 1;
        }
        n
    }

    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        // g x g^-1
        self.mul(self.mul(g, x), self.inv_of(g))
    }

    /// Canonical byte encoding of the multiplication structure, used for
    /// cache digests.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + self.mul.len() * 4);
        out.extend_from_slice(&(self.order as u64).to_le_bytes());
        for v in &self.mul {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    /// Build from a 0-based table whose row 0 / column 0 element is the
    /// identity; validates group axioms.
    pub fn from_table(table: Vec<Vec<u32>>, origin: String, bound: usize) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if n > bound {
            return Err(Error::OrderBound { order: n, bound });
        }
        let mut mul = Vec::with_capacity(n * n);
        for row in &table {
            if row.len() != n {
                return Err(Error::InvalidGroup("table is not square".into()));
            }
            for &v in row {
                if v as usize >= n {
                    return Err(Error::InvalidGroup(format!(
                        "entry {} out of range 0..{}",
                        v, n
                    )));
                }
                mul.push(v);
            }
        }
        // identity row/column
        for x in 0..n {
            if mul[x] as usize != x || mul[x * n] as usize != x {
                return Err(Error::InvalidGroup(
                    "element 0 is not a two-sided identity".into(),
                ));
            }
        }
        // Latin square
        let mut seen_row = vec![false; n];
        let mut seen_col = vec![false; n];
        for i in 0..n {
            seen_row.iter_mut().for_each(|v| *v = false);
            seen_col.iter_mut().for_each(|v| *v = false);
            for j in 0..n {
                let r = mul[i * n + j] as usize;
                let c = mul[j * n + i] as usize;
                if seen_row[r] || seen_col[c] {
                    return Err(Error::InvalidGroup(format!(
                        "row or column {} is not a permutation",
                        i
                    )));
                }
                seen_row[r] = true;
                seen_col[c] = true;
            }
        }
        // inverses
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] as usize == 0 {
                    inv[a] = b as u32;
                    break;
                }
            }
            if inv[a] == u32::MAX {
                return Err(Error::InvalidGroup(format!("element {} has no inverse", a)));
            }
            // two-sided
            if mul[(inv[a] as usize) * n + a] != 0 {
                return Err(Error::InvalidGroup(format!(
                    "inverse of {} is one-sided",
                    a
                )));
            }
        }
        let g = FiniteGroup { order: n, mul, inv, origin };
        g.check_associativity()?;
        Ok(g)
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        if n <= EXHAUSTIVE_ASSOC_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return Err(Error::InvalidGroup(format!(
                                "associativity fails at ({}, {}, {})",
                                a, b, c
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = SplitMix64::new(0x5eed_a550c);
            let samples = 10u64.saturating_mul((n as u64) * (n as u64));
            for _ in 0..samples {
                let a = rng.below(n as u64) as usize;
                let b = rng.below(n as u64) as usize;
                let c = rng.below(n as u64) as usize;
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return Err(Error::InvalidGroup(format!(
                        "associativity fails at ({}, {}, {})",
                        a, b, c
                    )));
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// group sources
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub enum GroupSource {
    /// `Zn:<k>`, `Sn:<k>`, `An:<k>`, `D:<2k>`, `Q8`, `SL23`, products joined by `x`.
    Builtin(String),
    /// Cayley-table file: line 1 = order n, then n lines of n 1-based indices.
    CayleyFile(PathBuf),
    /// One permutation generator per line in cycle notation.
    PermFile(PathBuf),
    /// Normalizer of a Sylow p-subgroup of the base group, induced as a
    /// group in its own right.
    SylowNormalizer(Box<GroupSource>, u64),
}

pub fn load_group(src: &GroupSource, bound: usize) -> Result<FiniteGroup> {
    match src {
        GroupSource::Builtin(spec) => builtin_group(spec, bound),
        GroupSource::CayleyFile(path) => {
            let text = std::fs::read_to_string(path)?;
            cayley_from_text(&text, &format!("file:{}", path.display()), bound)
        }
        GroupSource::PermFile(path) => {
            let text = std::fs::read_to_string(path)?;
            permutation_group_from_text(&text, &format!("permfile:{}", path.display()), bound)
        }
        GroupSource::SylowNormalizer(base, p) => {
            let g = load_group(base, bound)?;
            let syl = sylow_subgroup(&g, *p, 0)?;
            let norm = normalizer(&g, &syl);
            Ok(induced_group(&g, &norm))
        }
    }
}

pub fn cayley_from_text(text: &str, origin: &str, bound: usize) -> Result<FiniteGroup> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let n: usize = lines
        .next()
        .ok_or_else(|| Error::Parse("empty Cayley file".into()))?
        .trim()
        .parse()
        .map_err(|_| Error::Parse("first line must be the group order".into()))?;
    let mut table = Vec::with_capacity(n);
    for _ in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse("truncated Cayley table".into()))?;
        let row: Vec<u32> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad table entry {:?}", tok)))
            })
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(Error::Parse(format!(
                "expected {} entries per row, got {}",
                n,
                row.len()
            )));
        }
        // convert 1-based file entries to 0-based
        let mut converted = Vec::with_capacity(n);
        for v in row {
            if v == 0 || v as usize > n {
                return Err(Error::Parse(format!("entry {} out of range 1..={}", v, n)));
            }
            converted.push(v - 1);
        }
        table.push(converted);
    }
    FiniteGroup::from_table(table, origin.to_string(), bound)
}

/// Parse one line of cycle notation like `(1 2 3)(4 5)`, 1-based points.
fn parse_cycles(line: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut rest = line.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(Error::Parse(format!("expected '(' in {:?}", line)));
        }
        let end = rest
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {:?}", line)))?;
        let inner = &rest[1..end];
        let pts: Vec<usize> = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad point {:?}", s)))
            })
            .collect::<Result<_>>()?;
        if pts.iter().any(|&p| p == 0) {
            return Err(Error::Parse("points are 1-based".into()));
        }
        if !pts.is_empty() {
            cycles.push(pts);
        }
        rest = rest[end + 1..].trim_start();
    }
    Ok(cycles)
}

fn perm_from_cycles(cycles: &[Vec<usize>], degree: usize) -> Result<Vec<u32>> {
    let mut perm: Vec<u32> = (0..degree as u32).collect();
    for cyc in cycles {
        let mut seen = std::collections::HashSet::new();
        for &p in cyc {
            if !seen.insert(p) {
                return Err(Error::Parse("repeated point in cycle".into()));
            }
        }
        for w in 0..cyc.len() {
            let from = cyc[w] - 1;
            let to = cyc[(w + 1) % cyc.len()] - 1;
            perm[from] = to as u32;
        }
    }
    Ok(perm)
}

fn compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    // (a*b)(x) = a(b(x))
    b.iter().map(|&x| a[x as usize]).collect()
}

/// Close a set of permutation generators into a full element list and
/// convert to a Cayley table. The identity ends up at index 0.
pub fn permutation_group_from_generators(
    gens: &[Vec<u32>],
    origin: &str,
    bound: usize,
) -> Result<FiniteGroup> {
    let degree = gens.first().map(|g| g.len()).unwrap_or(1);
    for g in gens {
        if g.len() != degree {
            return Err(Error::Parse("generators act on different degrees".into()));
        }
    }
    let identity: Vec<u32> = (0..degree as u32).collect();
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut elements: Vec<Vec<u32>> = vec![identity.clone()];
    index.insert(identity, 0);
    let mut frontier = vec![0usize];
    while let Some(i) = frontier.pop() {
        for g in gens {
            let prod = compose(&elements[i], g);
            if !index.contains_key(&prod) {
                let id = elements.len();
                if id >= bound {
                    return Err(Error::OrderBound { order: id + 1, bound });
                }
                index.insert(prod.clone(), id);
                elements.push(prod);
                frontier.push(id);
            }
        }
    }
    let n = elements.len();
    let mut table = vec![vec![0u32; n]; n];
    for a in 0..n {
        for b in 0..n {
            let prod = compose(&elements[a], &elements[b]);
            table[a][b] = *index.get(&prod).expect("closure is closed") as u32;
        }
    }
    FiniteGroup::from_table(table, origin.to_string(), bound)
}

pub fn permutation_group_from_text(
    text: &str,
    origin: &str,
    bound: usize,
) -> Result<FiniteGroup> {
    let mut all_cycles = Vec::new();
    let mut max_point = 1usize;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cycles = parse_cycles(line)?;
        for c in &cycles {
            for &p in c {
                max_point = max_point.max(p);
            }
        }
        all_cycles.push(cycles);
    }
    if all_cycles.is_empty() {
        return Err(Error::Parse("no generators".into()));
    }
    let gens: Vec<Vec<u32>> = all_cycles
        .iter()
        .map(|c| perm_from_cycles(c, max_point))
        .collect::<Result<_>>()?;
    permutation_group_from_generators(&gens, origin, bound)
}

fn builtin_group(spec: &str, bound: usize) -> Result<FiniteGroup> {
    let parts: Vec<&str> = spec.split('x').map(|s| s.trim()).collect();
    let mut acc: Option<FiniteGroup> = None;
    for part in parts {
        let g = builtin_atom(part, bound)?;
        acc = Some(match acc {
            None => g,
            Some(a) => direct_product(&a, &g, bound)?,
        });
    }
    let mut g = acc.ok_or_else(|| Error::Parse("empty builtin spec".into()))?;
    g.origin = format!("builtin:{}", spec);
    Ok(g)
}

fn builtin_atom(spec: &str, bound: usize) -> Result<FiniteGroup> {
    if spec == "Q8" {
        return quaternion_group(bound);
    }
    if spec == "SL23" {
        return special_linear_2_3(bound);
    }
    let (kind, arg) = spec
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("bad builtin {:?}", spec)))?;
    let k: usize = arg
        .parse()
        .map_err(|_| Error::Parse(format!("bad builtin parameter {:?}", arg)))?;
    match kind {
        "Zn" => {
            if k == 0 {
                return Err(Error::Parse("Zn:0 is not a group".into()));
            }
            let table: Vec<Vec<u32>> = (0..k)
                .map(|a| (0..k).map(|b| ((a + b) % k) as u32).collect())
                .collect();
            FiniteGroup::from_table(table, format!("builtin:Zn:{}", k), bound)
        }
        "Sn" => {
            let gens = symmetric_generators(k);
            permutation_group_from_generators(&gens, &format!("builtin:Sn:{}", k), bound)
        }
        "An" => {
            let gens = alternating_generators(k);
            permutation_group_from_generators(&gens, &format!("builtin:An:{}", k), bound)
        }
        "D" => {
            if k % 2 != 0 || k == 0 {
                return Err(Error::Parse("dihedral spec is D:<2k> with even order".into()));
            }
            dihedral_group(k / 2, bound)
        }
        other => Err(Error::Parse(format!("unknown builtin kind {:?}", other))),
    }
}

fn symmetric_generators(k: usize) -> Vec<Vec<u32>> {
    if k <= 1 {
        return vec![vec![0]];
    }
    let mut rot: Vec<u32> = (0..k as u32).map(|i| (i + 1) % k as u32).collect();
    let swap: Vec<u32> = (0..k as u32)
        .map(|i| match i {
            0 => 1,
            1 => 0,
            v => v,
        })
        .collect();
    if k == 2 {
        rot = swap.clone();
    }
    vec![rot, swap]
}

fn alternating_generators(k: usize) -> Vec<Vec<u32>> {
    if k <= 2 {
        return vec![vec![0]];
    }
    // 3-cycles (1 2 3) and, for k > 3, the k-cycle or (k-1)-cycle pattern
    let three: Vec<u32> = (0..k as u32)
        .map(|i| match i {
            0 => 1,
            1 => 2,
            2 => 0,
            v => v,
        })
        .collect();
    if k == 3 {
        return vec![three];
    }
    let big: Vec<u32> = if k % 2 == 1 {
        // odd k: the k-cycle (1 2 ... k) is even
        (0..k as u32).map(|i| (i + 1) % k as u32).collect()
    } else {
        // even k: (2 3 ... k) fixing point 1 is even
        (0..k as u32)
            .map(|i| {
                if i == 0 {
                    0
                } else if i == k as u32 - 1 {
                    1
                } else {
                    i + 1
                }
            })
            .collect()
    };
    vec![three, big]
}

fn dihedral_group(k: usize, bound: usize) -> Result<FiniteGroup> {
    let origin = format!("builtin:D:{}", 2 * k);
    match k {
        0 => Err(Error::Parse("D:0 is not a group".into())),
        1 => {
            let table = vec![vec![0, 1], vec![1, 0]];
            FiniteGroup::from_table(table, origin, bound)
        }
        2 => {
            // Klein four group
            let table = vec![
                vec![0, 1, 2, 3],
                vec![1, 0, 3, 2],
                vec![2, 3, 0, 1],
                vec![3, 2, 1, 0],
            ];
            FiniteGroup::from_table(table, origin, bound)
        }
        _ => {
            let rot: Vec<u32> = (0..k as u32).map(|i| (i + 1) % k as u32).collect();
            let refl: Vec<u32> = (0..k as u32).map(|i| (k as u32 - i) % k as u32).collect();
            permutation_group_from_generators(&[rot, refl], &origin, bound)
        }
    }
}

fn quaternion_group(bound: usize) -> Result<FiniteGroup> {
    // elements (sign, symbol) with symbols 1, i, j, k; index = symbol*2 + sign
    // so that (+1) lands at index 0.
    let sym_mul = |a: usize, b: usize| -> (usize, usize) {
        // returns (sign flip, symbol) for symbol product; 0=1,1=i,2=j,3=k
        match (a, b) {
            (0, s) => (0, s),
            (s, 0) => (0, s),
            (1, 1) => (1, 0),
            (2, 2) => (1, 0),
            (3, 3) => (1, 0),
            (1, 2) => (0, 3),
            (2, 3) => (0, 1),
            (3, 1) => (0, 2),
            (2, 1) => (1, 3),
            (3, 2) => (1, 1),
            (1, 3) => (1, 2),
            _ => unreachable!(),
        }
    };
    let idx = |sign: usize, sym: usize| sym * 2 + sign;
    let mut table = vec![vec![0u32; 8]; 8];
    for s1 in 0..2 {
        for a in 0..4 {
            for s2 in 0..2 {
                for b in 0..4 {
                    let (flip, sym) = sym_mul(a, b);
                    let sign = (s1 + s2 + flip) % 2;
                    table[idx(s1, a)][idx(s2, b)] = idx(sign, sym) as u32;
                }
            }
        }
    }
    FiniteGroup::from_table(table, "builtin:Q8".into(), bound)
}

fn special_linear_2_3(bound: usize) -> Result<FiniteGroup> {
    // 2x2 matrices over F_3 with determinant 1, identity first
    let mut elements: Vec<[u8; 4]> = Vec::new();
    elements.push([1, 0, 0, 1]);
    for a in 0..3u8 {
        for b in 0..3u8 {
            for c in 0..3u8 {
                for d in 0..3u8 {
                    let det = (a as i32 * d as i32 - b as i32 * c as i32).rem_euclid(3);
                    let m = [a, b, c, d];
                    if det == 1 && m != [1, 0, 0, 1] {
                        elements.push(m);
                    }
                }
            }
        }
    }
    let index: HashMap<[u8; 4], usize> =
        elements.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let n = elements.len();
    let mut table = vec![vec![0u32; n]; n];
    for (i, x) in elements.iter().enumerate() {
        for (j, y) in elements.iter().enumerate() {
            let prod = [
                (x[0] * y[0] + x[1] * y[2]) % 3,
                (x[0] * y[1] + x[1] * y[3]) % 3,
                (x[2] * y[0] + x[3] * y[2]) % 3,
                (x[2] * y[1] + x[3] * y[3]) % 3,
            ];
            table[i][j] = index[&prod] as u32;
        }
    }
    FiniteGroup::from_table(table, "builtin:SL23".into(), bound)
}

pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup, bound: usize) -> Result<FiniteGroup> {
    let n = a.order() * b.order();
    if n > bound {
        return Err(Error::OrderBound { order: n, bound });
    }
    let bo = b.order();
    let mut table = vec![vec![0u32; n]; n];
    for a1 in 0..a.order() {
        for b1 in 0..bo {
            for a2 in 0..a.order() {
                for b2 in 0..bo {
                    let x = a1 * bo + b1;
                    let y = a2 * bo + b2;
                    table[x][y] = (a.mul(a1, a2) * bo + b.mul(b1, b2)) as u32;
                }
            }
        }
    }
    FiniteGroup::from_table(
        table,
        format!("product({},{})", a.origin, b.origin),
        bound,
    )
}

// ---------------------------------------------------------------------------
// conjugacy classes
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct ClassData {
    pub n_classes: usize,
    pub class_of: Vec<u32>,
    pub reps: Vec<u32>,
    pub sizes: Vec<u64>,
    pub inverse_class: Vec<usize>,
    pub rep_orders: Vec<u64>,
    /// Elements of each class, in increasing element index.
    pub members: Vec<Vec<u32>>,
}

impl ClassData {
    /// Class of g_i^t; depends on t only modulo the order of the
    /// representative.
    pub fn power_class(&self, g: &FiniteGroup, i: usize, t: u64) -> usize {
        let o = self.rep_orders[i];
        let e = t % o;
        self.class_of[g.pow(self.reps[i] as usize, e)] as usize
    }
}

pub fn conjugacy_classes(g: &FiniteGroup) -> ClassData {
    let n = g.order();
    let mut class_of = vec![u32::MAX; n];
    let mut reps = Vec::new();
    let mut members: Vec<Vec<u32>> = Vec::new();
    for x in 0..n {
        if class_of[x] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x as u32);
        let mut orbit = Vec::new();
        // orbit sweep of the conjugation action
        let mut stack = vec![x];
        class_of[x] = id;
        while let Some(y) = stack.pop() {
            orbit.push(y as u32);
            for c in 0..n {
                let z = g.conjugate(y, c);
                if class_of[z] == u32::MAX {
                    class_of[z] = id;
                    stack.push(z);
                }
            }
        }
        orbit.sort_unstable();
        members.push(orbit);
    }
    let n_classes = reps.len();
    let sizes: Vec<u64> = members.iter().map(|m| m.len() as u64).collect();
    let inverse_class: Vec<usize> = (0..n_classes)
        .map(|i| class_of[g.inv_of(reps[i] as usize)] as usize)
        .collect();
    let rep_orders: Vec<u64> = (0..n_classes)
        .map(|i| g.element_order(reps[i] as usize))
        .collect();
    debug_assert_eq!(sizes.iter().sum::<u64>(), n as u64);
    debug_assert_eq!(class_of[FiniteGroup::IDENTITY], 0);
    ClassData {
        n_classes,
        class_of,
        reps,
        sizes,
        inverse_class,
        rep_orders,
        members,
    }
}

/// Least common multiple of element orders.
pub fn exponent(g: &FiniteGroup) -> u64 {
    let mut m = 1u64;
    for x in 0..g.order() {
        m = lcm_u64(m, g.element_order(x));
    }
    m
}

// ---------------------------------------------------------------------------
// subgroups
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct Subgroup {
    pub members: Vec<u32>,
    mask: Vec<bool>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    fn from_members(g: &FiniteGroup, mut members: Vec<u32>) -> Subgroup {
        members.sort_unstable();
        members.dedup();
        let mut mask = vec![false; g.order()];
        for &m in &members {
            mask[m as usize] = true;
        }
        let s = Subgroup { members, mask };
        debug_assert!(s.contains(FiniteGroup::IDENTITY));
        debug_assert_eq!(g.order() % s.order(), 0, "Lagrange");
        s
    }
}

/// Closure of a generating set under multiplication and inversion.
pub fn subgroup_closure(g: &FiniteGroup, gens: &[usize]) -> Subgroup {
    let mut mask = vec![false; g.order()];
    mask[FiniteGroup::IDENTITY] = true;
    let mut members = vec![FiniteGroup::IDENTITY as u32];
    let mut frontier = vec![FiniteGroup::IDENTITY];
    let mut gens_all: Vec<usize> = gens.to_vec();
    gens_all.extend(gens.iter().map(|&x| g.inv_of(x)));
    while let Some(x) = frontier.pop() {
        for &s in &gens_all {
            let y = g.mul(x, s);
            if !mask[y] {
                mask[y] = true;
                members.push(y as u32);
                frontier.push(y);
            }
        }
    }
    Subgroup::from_members(g, members)
}

/// N_G(S) by full element scan.
pub fn normalizer(g: &FiniteGroup, s: &Subgroup) -> Subgroup {
    let mut members = Vec::new();
    'outer: for x in 0..g.order() {
        for &m in &s.members {
            if !s.contains(g.conjugate(m as usize, x)) {
                continue 'outer;
            }
        }
        members.push(x as u32);
    }
    Subgroup::from_members(g, members)
}

/// Sylow p-subgroup by normalizer growth: starting from the trivial
/// subgroup, repeatedly adjoin an element u of N_G(S) \ S with u^p in S
/// until the full p-part of |G| is reached. Such u always exists while
/// |S| < p^a (Cauchy applied to N_G(S)/S), so this terminates in exactly
/// a steps where p^a || |G|. The seed only shuffles which conjugate gets
/// picked.
pub fn sylow_subgroup(g: &FiniteGroup, p: u64, seed: u64) -> Result<Subgroup> {
    let n = g.order() as u64;
    if p < 2 || !crate::arith::is_prime_u64(p) || n % p != 0 {
        return Err(Error::InvalidGroup(format!(
            "{} is not a prime divisor of the group order {}",
            p, n
        )));
    }
    let mut target = 1u64;
    let mut rest = n;
    while rest % p == 0 {
        rest /= p;
        target *= p;
    }
    let mut rng = SplitMix64::new(seed.wrapping_mul(0x9e3779b97f4a7c15) ^ p);
    let mut s = subgroup_closure(g, &[]);
    while (s.order() as u64) < target {
        let norm = normalizer(g, &s);
        let mut candidates: Vec<u32> = norm.members.clone();
        for i in (1..candidates.len()).rev() {
            let j = rng.below((i + 1) as u64) as usize;
            candidates.swap(i, j);
        }
        let mut extended = false;
        for &y in &candidates {
            let y = y as usize;
            if s.contains(y) {
                continue;
            }
            // order d of the coset yS in N/S = smallest d >= 1 with y^d in S
            let mut d = 1u64;
            let mut acc = y;
            while !s.contains(acc) {
                acc = g.mul(acc, y);
                d += 1;
            }
            if d % p != 0 {
                continue;
            }
            let u = g.pow(y, d / p);
            debug_assert!(!s.contains(u) && s.contains(g.pow(u, p)));
            let mut gens: Vec<usize> = s.members.iter().map(|&m| m as usize).collect();
            gens.push(u);
            let bigger = subgroup_closure(g, &gens);
            debug_assert_eq!(bigger.order(), s.order() * p as usize);
            s = bigger;
            extended = true;
            break;
        }
        if !extended {
            return Err(Error::InvalidGroup(
                "Sylow growth stalled; multiplication table is inconsistent".into(),
            ));
        }
    }
    Ok(s)
}

/// Re-index the members of S as a FiniteGroup in its own right.
pub fn induced_group(g: &FiniteGroup, s: &Subgroup) -> FiniteGroup {
    let n = s.order();
    let mut local = HashMap::with_capacity(n);
    for (i, &m) in s.members.iter().enumerate() {
        local.insert(m as usize, i);
    }
    debug_assert_eq!(local[&FiniteGroup::IDENTITY], 0);
    let mut table = vec![vec![0u32; n]; n];
    for (i, &a) in s.members.iter().enumerate() {
        for (j, &b) in s.members.iter().enumerate() {
            table[i][j] = local[&g.mul(a as usize, b as usize)] as u32;
        }
    }
    let mut origin = String::new();
    let _ = write!(origin, "induced from subgroup of order {} in {}", n, g.origin);
    FiniteGroup::from_table(table, origin, g.order().max(1))
        .expect("induced table inherits group axioms")
}
