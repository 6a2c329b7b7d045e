//! Small integer utilities shared across the crate: a deterministic PRNG,
//! primality, and prime search in arithmetic progressions.

/// splitmix64; deterministic across platforms, good enough for sampling
/// evaluation points and randomized polynomial splitting.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, n).
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        // rejection sampling to avoid modulo bias
        let zone = u64::MAX - (u64::MAX % n);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % n;
            }
        }
    }

    /// Uniform in [lo, hi] inclusive.
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + self.below(span) as i64
    }
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd_u64(a, b) * b
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = 17u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime p with p ≡ 1 (mod m) and p > lower.
pub fn prime_one_mod(m: u64, lower: u64) -> u64 {
    debug_assert!(m >= 1);
    let mut k = lower / m;
    loop {
        let candidate = m * k + 1;
        if candidate > lower && is_prime_u64(candidate) {
            return candidate;
        }
        k += 1;
    }
}

/// Integer square root of a perfect square, if it is one.
pub fn perfect_sqrt(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt().round() as u64;
    for c in r.saturating_sub(2)..=r + 2 {
        if c * c == n {
            return Some(c);
        }
    }
    None
}

/// Units of Z/m, i.e. residues coprime to m, always nonempty ({1} for m=1).
pub fn units_mod(m: u64) -> Vec<u64> {
    if m == 1 {
        return vec![1];
    }
    (1..m).filter(|&t| gcd_u64(t, m) == 1).collect()
}

/// Multiplicative closure of a residue list inside (Z/m)*.
pub fn close_units(m: u64, gens: &[u64]) -> Vec<u64> {
    let mut set = std::collections::BTreeSet::new();
    set.insert(1 % m.max(1));
    if m <= 1 {
        return vec![1];
    }
    let mut frontier: Vec<u64> = gens.iter().map(|&t| t % m).collect();
    while let Some(t) = frontier.pop() {
        if set.insert(t) {
            let snapshot: Vec<u64> = set.iter().copied().collect();
            for s in snapshot {
                frontier.push(s * t % m);
            }
        }
    }
    set.into_iter().collect()
}
