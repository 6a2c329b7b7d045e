//! Cyclotomic numbers as coefficient vectors in the power basis of a fixed
//! primitive e-th root of unity, reduced only modulo x^e - 1.
//!
//! Equality has two routes. The fast route follows the working convention
//! of this crate: evaluate at an element of order e modulo two independent
//! primes ≡ 1 (mod e) and require a float witness to agree. The exact
//! route reduces the difference modulo the e-th cyclotomic polynomial,
//! which is a genuine zero test in Z\[ξ\]; the exact route also yields the
//! canonical representative where rational integers have support only at
//! exponent 0.

use crate::arith::prime_one_mod;
use crate::modp::{addm, element_of_order, invm, mulm};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::HashMap;
use std::f64::consts::TAU;
use std::sync::Mutex;
use std::sync::OnceLock;

/// A cyclotomic number with rational coefficients: sum_k c\[k] ξ^k, ξ a
/// fixed primitive e-th root of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyc {
    pub e: usize,
    pub c: Vec<BigRational>,
}

fn rat_i(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl Cyc {
    pub fn zero(e: usize) -> Self {
        Cyc { e, c: vec![BigRational::zero(); e] }
    }

    pub fn one(e: usize) -> Self {
        Self::from_int(e, 1)
    }

    pub fn from_int(e: usize, v: i64) -> Self {
        let mut z = Self::zero(e);
        z.c[0] = rat_i(v);
        z
    }

    pub fn from_bigint(e: usize, v: BigInt) -> Self {
        let mut z = Self::zero(e);
        z.c[0] = BigRational::from_integer(v);
        z
    }

    pub fn from_rational(e: usize, v: BigRational) -> Self {
        let mut z = Self::zero(e);
        z.c[0] = v;
        z
    }

    /// ξ^k.
    pub fn root_power(e: usize, k: usize) -> Self {
        let mut z = Self::zero(e);
        z.c[k % e] = BigRational::one();
        z
    }

    pub fn add(&self, other: &Cyc) -> Cyc {
        assert_eq!(self.e, other.e);
        let c = self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect();
        Cyc { e: self.e, c }
    }

    pub fn sub(&self, other: &Cyc) -> Cyc {
        assert_eq!(self.e, other.e);
        let c = self.c.iter().zip(&other.c).map(|(a, b)| a - b).collect();
        Cyc { e: self.e, c }
    }

    pub fn neg(&self) -> Cyc {
        Cyc { e: self.e, c: self.c.iter().map(|a| -a).collect() }
    }

    pub fn mul(&self, other: &Cyc) -> Cyc {
        assert_eq!(self.e, other.e);
        let e = self.e;
        let mut c = vec![BigRational::zero(); e];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = (i + j) % e;
                c[k] += a * b;
            }
        }
        Cyc { e, c }
    }

    pub fn scale(&self, r: &BigRational) -> Cyc {
        Cyc { e: self.e, c: self.c.iter().map(|a| a * r).collect() }
    }

    pub fn scale_int(&self, v: i64) -> Cyc {
        self.scale(&rat_i(v))
    }

    /// Galois twist ξ -> ξ^t; requires gcd(t, e) = 1 to be an automorphism.
    pub fn galois(&self, t: u64) -> Cyc {
        let e = self.e;
        let mut c = vec![BigRational::zero(); e];
        for (k, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            c[(k as u64 * t % e as u64) as usize] += a;
        }
        Cyc { e, c }
    }

    /// Re-express in the power basis of a primitive e2-th root, e | e2.
    pub fn lift_to(&self, e2: usize) -> Cyc {
        assert_eq!(e2 % self.e, 0);
        let stride = e2 / self.e;
        let mut c = vec![BigRational::zero(); e2];
        for (k, a) in self.c.iter().enumerate() {
            c[k * stride] = a.clone();
        }
        Cyc { e: e2, c }
    }

    /// Evaluate at z of order e in Z/p. Denominators must be invertible,
    /// guaranteed here by choosing p larger than any denominator factor.
    pub fn eval_modp(&self, p: u64, z: u64) -> u64 {
        let mut acc = 0u64;
        let mut pow = 1u64;
        for a in &self.c {
            if !a.is_zero() {
                let num = a.numer().mod_floor_u64(p);
                let den = a.denom().mod_floor_u64(p);
                debug_assert!(den != 0, "denominator divisible by evaluation prime");
                acc = addm(acc, mulm(mulm(num, invm(den, p), p), pow, p), p);
            }
            pow = mulm(pow, z, p);
        }
        acc
    }

    /// Complex float value.
    pub fn eval_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let v = a.to_f64().unwrap_or(f64::NAN);
            let angle = TAU * (k as f64) / (self.e as f64);
            re += v * angle.cos();
            im += v * angle.sin();
        }
        (re, im)
    }

    pub fn abs_complex(&self) -> f64 {
        let (re, im) = self.eval_complex();
        (re * re + im * im).sqrt()
    }

    /// Fast zero test: evaluation at two independent primes ≡ 1 (mod e)
    /// plus a float witness.
    pub fn is_zero_modular(&self) -> bool {
        if self.c.iter().all(|a| a.is_zero()) {
            return true;
        }
        for (p, z) in witness_primes(self.e) {
            if self.eval_modp(p, z) != 0 {
                return false;
            }
        }
        let scale = self
            .c
            .iter()
            .map(|a| a.to_f64().map(f64::abs).unwrap_or(0.0))
            .fold(1.0f64, f64::max);
        self.abs_complex() <= 1e-9 * scale * (self.e as f64)
    }

    /// Exact zero test in Z\[ξ\]: clear denominators and reduce modulo the
    /// e-th cyclotomic polynomial.
    pub fn is_zero_exact(&self) -> bool {
        self.canonical().iter().all(|a| a.is_zero())
    }

    /// Canonical representative: remainder modulo Φ_e, length φ(e).
    pub fn canonical(&self) -> Vec<BigRational> {
        let phi = cyclotomic_poly(self.e);
        let mut rem: Vec<BigRational> = self.c.clone();
        let deg_phi = phi.len() - 1;
        // long division by the monic Φ_e
        while rem.len() > deg_phi {
            let lead = rem.pop().unwrap();
            if lead.is_zero() {
                continue;
            }
            let offset = rem.len() - deg_phi;
            for (k, pc) in phi.iter().take(deg_phi).enumerate() {
                if !pc.is_zero() {
                    let sub = &lead * BigRational::from_integer(pc.clone());
                    rem[offset + k] -= sub;
                }
            }
        }
        while rem.len() < deg_phi {
            rem.push(BigRational::zero());
        }
        rem
    }

    pub fn eq_exact(&self, other: &Cyc) -> bool {
        self.sub(other).is_zero_exact()
    }

    pub fn eq_modular(&self, other: &Cyc) -> bool {
        self.sub(other).is_zero_modular()
    }

    /// The rational integer this value equals, when it does.
    pub fn as_integer(&self) -> Option<BigInt> {
        let canon = self.canonical();
        if canon.iter().skip(1).all(|a| a.is_zero()) {
            let v = canon.first().cloned().unwrap_or_else(BigRational::zero);
            if v.is_integer() {
                return Some(v.to_integer());
            }
            return None;
        }
        None
    }

    /// The rational number this value equals, when it does.
    pub fn as_rational(&self) -> Option<BigRational> {
        let canon = self.canonical();
        if canon.iter().skip(1).all(|a| a.is_zero()) {
            return Some(canon.first().cloned().unwrap_or_else(BigRational::zero));
        }
        None
    }

    /// Render as a readable sum of root powers.
    pub fn render(&self) -> String {
        if self.c.iter().all(|a| a.is_zero()) {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let coeff = a.to_string();
            if k == 0 {
                parts.push(coeff);
            } else if a.is_one() {
                parts.push(format!("z{}^{}", self.e, k));
            } else {
                parts.push(format!("{}*z{}^{}", coeff, self.e, k));
            }
        }
        parts.join(" + ")
    }
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        use num_integer::Integer;
        let m = self.mod_floor(&BigInt::from(p));
        m.to_u64().expect("reduced residue fits u64")
    }
}

/// Two fixed witness primes ≡ 1 (mod e), larger than 2^20 so that the
/// denominators appearing in this crate (divisors of group orders and
/// degrees) are never divisible by them.
fn witness_primes(e: usize) -> [(u64, u64); 2] {
    static CACHE: OnceLock<Mutex<HashMap<usize, [(u64, u64); 2]>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    *guard.entry(e).or_insert_with(|| {
        let p1 = prime_one_mod(e as u64, 1 << 20);
        let p2 = prime_one_mod(e as u64, p1);
        let z1 = element_of_order(e as u64, p1);
        let z2 = element_of_order(e as u64, p2);
        [(p1, z1), (p2, z2)]
    })
}

/// Integer coefficients of the e-th cyclotomic polynomial, ascending,
/// computed by exact division of x^e - 1 by the Φ_d for proper divisors d.
pub fn cyclotomic_poly(e: usize) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&e) {
        return hit.clone();
    }
    let result = if e == 1 {
        vec![BigInt::from(-1), BigInt::one()]
    } else {
        // x^e - 1
        let mut num = vec![BigInt::zero(); e + 1];
        num[0] = BigInt::from(-1);
        num[e] = BigInt::one();
        for d in 1..e {
            if e % d == 0 {
                let phi_d = cyclotomic_poly(d);
                num = poly_div_exact_int(&num, &phi_d);
            }
        }
        num
    };
    cache.lock().unwrap().insert(e, result.clone());
    result
}

fn poly_div_exact_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r: Vec<BigInt> = a.to_vec();
    let db = b.len() - 1;
    assert!(b[db].is_one(), "divisor must be monic");
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let lead = r.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let offset = r.len() - db;
        q[offset] = lead.clone();
        for (k, bc) in b.iter().take(db).enumerate() {
            if !bc.is_zero() {
                let sub = &lead * bc;
                r[offset + k] -= sub;
            }
        }
    }
    assert!(r.iter().all(|v| v.is_zero()), "division must be exact");
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modp::powm;

    #[test]
    fn cyclotomic_polys() {
        let to_i64 = |v: &Vec<BigInt>| -> Vec<i64> {
            v.iter().map(|c| c.to_i64().unwrap()).collect::<Vec<_>>()
        };
        assert_eq!(to_i64(&cyclotomic_poly(1)), vec![-1, 1]);
        assert_eq!(to_i64(&cyclotomic_poly(2)), vec![1, 1]);
        assert_eq!(to_i64(&cyclotomic_poly(3)), vec![1, 1, 1]);
        assert_eq!(to_i64(&cyclotomic_poly(4)), vec![1, 0, 1]);
        assert_eq!(to_i64(&cyclotomic_poly(6)), vec![1, -1, 1]);
        assert_eq!(to_i64(&cyclotomic_poly(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        for e in [2usize, 3, 4, 6, 8, 12] {
            let mut s = Cyc::zero(e);
            for k in 0..e {
                s = s.add(&Cyc::root_power(e, k));
            }
            assert!(s.is_zero_exact(), "e={}", e);
            assert!(s.is_zero_modular(), "e={}", e);
        }
    }

    #[test]
    fn primitive_root_relations() {
        // ξ_3 + ξ_3^2 = -1
        let z = Cyc::root_power(3, 1);
        let z2 = Cyc::root_power(3, 2);
        let sum = z.add(&z2);
        assert_eq!(sum.as_integer(), Some(BigInt::from(-1)));
        // ξ_4^2 = -1
        let i2 = Cyc::root_power(4, 1).mul(&Cyc::root_power(4, 1));
        assert_eq!(i2.as_integer(), Some(BigInt::from(-1)));
        // ξ_6 - ξ_6^2 = 1... check: ξ6 = e^{iπ/3}; ξ6 - ξ6^2 = 1
        let d = Cyc::root_power(6, 1).sub(&Cyc::root_power(6, 2));
        assert_eq!(d.as_integer(), Some(BigInt::from(1)));
    }

    #[test]
    fn mul_and_galois() {
        let e = 5;
        let z = Cyc::root_power(e, 1);
        let mut prod = Cyc::one(e);
        for _ in 0..5 {
            prod = prod.mul(&z);
        }
        assert!(prod.eq_exact(&Cyc::one(e)));
        // Galois: ξ -> ξ^2 maps ξ^3 to ξ^6 = ξ
        let v = Cyc::root_power(e, 3).galois(2);
        assert!(v.eq_exact(&Cyc::root_power(e, 1)));
    }

    #[test]
    fn lift_preserves_value() {
        let v = Cyc::root_power(3, 1).add(&Cyc::from_int(3, 2));
        let lifted = v.lift_to(12);
        let (re1, im1) = v.eval_complex();
        let (re2, im2) = lifted.eval_complex();
        assert!((re1 - re2).abs() < 1e-12 && (im1 - im2).abs() < 1e-12);
        assert!(!lifted.is_zero_exact());
    }

    #[test]
    fn modular_agrees_with_exact_on_random_values() {
        use crate::arith::SplitMix64;
        let mut rng = SplitMix64::new(7);
        for e in [4usize, 6, 12] {
            for _ in 0..50 {
                let mut v = Cyc::zero(e);
                for k in 0..e {
                    v.c[k] = rat_i(rng.range_i64(-9, 9));
                }
                assert_eq!(v.is_zero_exact(), v.is_zero_modular(), "e={} v={:?}", e, v.c);
            }
            // values in the kernel of the evaluation: multiples of Φ-cofactor
            let mut allones = Cyc::zero(e);
            for k in 0..e {
                allones.c[k] = BigRational::one();
            }
            assert!(allones.is_zero_exact());
            assert!(allones.is_zero_modular());
        }
    }

    proptest::proptest! {
        #[test]
        fn ring_laws_hold_exactly(
            a in proptest::collection::vec(-9i64..=9, 6),
            b in proptest::collection::vec(-9i64..=9, 6),
            c in proptest::collection::vec(-9i64..=9, 6),
        ) {
            let e = 6usize;
            let mk = |v: &Vec<i64>| {
                let mut z = Cyc::zero(e);
                for (k, &x) in v.iter().enumerate() {
                    z.c[k] = rat_i(x);
                }
                z
            };
            let (a, b, c) = (mk(&a), mk(&b), mk(&c));
            // commutativity and associativity
            proptest::prop_assert!(a.mul(&b).eq_exact(&b.mul(&a)));
            proptest::prop_assert!(a.mul(&b).mul(&c).eq_exact(&a.mul(&b.mul(&c))));
            // distributivity
            proptest::prop_assert!(
                a.mul(&b.add(&c)).eq_exact(&a.mul(&b).add(&a.mul(&c)))
            );
            // subtraction inverts addition
            proptest::prop_assert!(a.add(&b).sub(&b).eq_exact(&a));
        }

        #[test]
        fn galois_twist_is_a_ring_map(
            a in proptest::collection::vec(-9i64..=9, 12),
            b in proptest::collection::vec(-9i64..=9, 12),
            t in proptest::sample::select(vec![1u64, 5, 7, 11]),
        ) {
            let e = 12usize;
            let mk = |v: &Vec<i64>| {
                let mut z = Cyc::zero(e);
                for (k, &x) in v.iter().enumerate() {
                    z.c[k] = rat_i(x);
                }
                z
            };
            let (a, b) = (mk(&a), mk(&b));
            proptest::prop_assert!(
                a.mul(&b).galois(t).eq_exact(&a.galois(t).mul(&b.galois(t)))
            );
            proptest::prop_assert!(
                a.add(&b).galois(t).eq_exact(&a.galois(t).add(&b.galois(t)))
            );
            // a unit twist is invertible: t * t_inv = 1 mod 12 pairs (1,1),
            // (5,5), (7,7), (11,11) since every unit mod 12 squares to 1
            proptest::prop_assert!(a.galois(t).galois(t).eq_exact(&a));
        }

        #[test]
        fn modular_zero_test_agrees_with_exact(
            v in proptest::collection::vec(-9i64..=9, 8),
            kill in proptest::bool::ANY,
        ) {
            let e = 8usize;
            let mut z = Cyc::zero(e);
            for (k, &x) in v.iter().enumerate() {
                z.c[k] = rat_i(x);
            }
            if kill {
                // project into the evaluation kernel by subtracting the
                // canonical representative
                let canon = z.canonical();
                for (k, c) in canon.into_iter().enumerate() {
                    z.c[k] -= c;
                }
            }
            proptest::prop_assert_eq!(z.is_zero_exact(), z.is_zero_modular());
            proptest::prop_assert_eq!(z.is_zero_exact(), kill || v.iter().all(|&x| x == 0));
        }

        #[test]
        fn lift_preserves_exact_equality(
            v in proptest::collection::vec(-9i64..=9, 6),
        ) {
            let e = 6usize;
            let mut z = Cyc::zero(e);
            for (k, &x) in v.iter().enumerate() {
                z.c[k] = rat_i(x);
            }
            let lifted = z.lift_to(24);
            // the lift is injective on values: z = 0 iff lift(z) = 0, and
            // rational values are preserved
            proptest::prop_assert_eq!(z.is_zero_exact(), lifted.is_zero_exact());
            proptest::prop_assert_eq!(z.as_rational(), lifted.as_rational());
        }
    }

    #[test]
    fn eval_modp_consistent_with_power_relations() {
        let e = 6;
        let [(p, z), _] = super::witness_primes(e);
        let v = Cyc::root_power(e, 1);
        assert_eq!(powm(v.eval_modp(p, z), 6, p), 1);
        let half = Cyc::from_rational(e, BigRational::new(BigInt::one(), BigInt::from(2)));
        assert_eq!(mulm(half.eval_modp(p, z), 2, p), 1);
    }
}
