//! Lower and upper bounds for the maximum arc size `tau(n)`.
//!
//! Upper bounds come from bound arithmetic:
//!
//! * `tau(p) = p + 1` for odd primes, `tau(2) = 4`;
//! * `tau(m k) <= min(m tau(k), k tau(m))` for coprime `m, k > 1`;
//! * `tau(2p) <= 2p + 2` for odd primes `p`;
//! * `tau(n) <= 2n`, since each of the `n` parallel lines of one direction holds at most two points.
//!
//! Lower bounds are witnessed by explicit arcs wherever possible: a conic for
//! odd primes, scaled lifts from unitary divisors, and the bundled figure
//! certificates.

use std::collections::{BTreeMap, HashMap};

use crate::arc::ArcSet;
use crate::fixtures;
use crate::modular::{gcd, is_prime, Modulus};

/// Exact values of `tau(n)` treated as known. Primes are always known.
#[derive(Clone, Debug, Default)]
pub struct KnownTau {
    values: BTreeMap<u32, usize>,
}

/// Published exact values for non-prime moduli up to 25.
const PUBLISHED: [(u32, usize); 15] = [
    (4, 6),
    (6, 8),
    (8, 8),
    (9, 9),
    (10, 12),
    (12, 12),
    (14, 12),
    (15, 15),
    (16, 14),
    (18, 17),
    (20, 18),
    (21, 18),
    (22, 18),
    (24, 20),
    (25, 20),
];

impl KnownTau {
    /// Only the prime formula.
    pub fn primes_only() -> Self {
        Self::default()
    }

    /// Every published exact value.
    pub fn published() -> Self {
        KnownTau { values: PUBLISHED.into_iter().collect() }
    }

    /// Published exact values for prime powers only; composite moduli with
    /// several prime factors are then bounded by the product rule.
    pub fn prime_powers() -> Self {
        KnownTau {
            values: PUBLISHED.into_iter().filter(|&(n, _)| crate::modular::factorize(n as u64).len() == 1).collect(),
        }
    }

    pub fn with(mut self, n: u32, tau: usize) -> Self {
        self.values.insert(n, tau);
        self
    }

    pub fn get(&self, n: u32) -> Option<usize> {
        if n == 2 {
            return Some(4);
        }
        if is_prime(n as u64) {
            return Some(n as usize + 1);
        }
        self.values.get(&n).copied()
    }
}

#[derive(Clone, Debug)]
pub struct Bounds {
    pub n: u32,
    pub lower: usize,
    pub upper: usize,
    pub lower_note: String,
    pub upper_note: String,
    /// An arc of size `lower`, when one is available.
    pub witness: Option<ArcSet>,
}

impl Bounds {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }
}

struct UpperMemo<'a> {
    known: &'a KnownTau,
    memo: HashMap<u32, (usize, String)>,
}

impl UpperMemo<'_> {
    fn upper(&mut self, n: u32) -> (usize, String) {
        if let Some(hit) = self.memo.get(&n) {
            return hit.clone();
        }
        let mut best = (2 * n as usize, format!("2*{n} (two points per parallel line)"));
        let mut consider = |value: usize, note: String| {
            if value < best.0 {
                best = (value, note);
            }
        };
        if let Some(t) = self.known.get(n) {
            consider(t, format!("known value tau({n}) = {t}"));
        }
        if n.is_multiple_of(2) && (n / 2) % 2 == 1 && is_prime(n as u64 / 2) {
            consider(n as usize + 2, format!("2p + 2 with p = {}", n / 2));
        }
        for m in 2..n {
            let k = n / m;
            if !n.is_multiple_of(m) || m > k || gcd(m as u64, k as u64) != 1 {
                continue;
            }
            let (um, _) = self.upper(m);
            let (uk, _) = self.upper(k);
            consider(m as usize * uk, format!("{m}*tau({k}) <= {m}*{uk}"));
            consider(k as usize * um, format!("{k}*tau({m}) <= {k}*{um}"));
        }
        self.memo.insert(n, best.clone());
        best
    }
}

/// An arc of size `p + 1` for an odd prime `p`: the ellipse `x^2 - d y^2 = 1`
/// with `d` a non-square.
pub fn conic_arc(p: Modulus) -> Option<ArcSet> {
    let q = p.get() as i64;
    if !p.is_prime() || q == 2 {
        return None;
    }
    let squares: Vec<i64> = (1..q).map(|x| x * x % q).collect();
    let d = (1..q).find(|d| !squares.contains(d))?;
    let pts = p.points().filter(|pt| {
        let (x, y) = (pt.x as i64, pt.y as i64);
        (x * x - d * y * y - 1).rem_euclid(q) == 0
    });
    ArcSet::new(p, pts).ok()
}

/// `(i, j) mod d  ->  (k i, k j) mod d k` for coprime `d` and `k`.
fn scale_lift(x: &ArcSet, n: Modulus) -> Option<ArcSet> {
    let d = x.modulus().get();
    let k = n.get() / d;
    if !n.get().is_multiple_of(d) || gcd(d as u64, k as u64) != 1 {
        return None;
    }
    let k = k as i64;
    ArcSet::new(n, x.points().iter().map(|p| n.point(k * p.x as i64, k * p.y as i64))).ok()
}

fn best_witness(n: Modulus, memo: &mut HashMap<u32, Option<ArcSet>>) -> Option<ArcSet> {
    if let Some(hit) = memo.get(&n.get()) {
        return hit.clone();
    }
    let m = n.get();
    let mut candidates: Vec<ArcSet> = Vec::new();
    if m == 2 {
        candidates.extend(ArcSet::new(n, n.points()).ok());
    }
    candidates.extend(conic_arc(n));
    candidates.extend(fixtures::figures().into_iter().filter(|f| f.modulus() == n));
    for d in 2..m {
        if m.is_multiple_of(d) && gcd(d as u64, (m / d) as u64) == 1 {
            let sub = Modulus::new(d as i64).expect("divisor in range");
            if let Some(w) = best_witness(sub, memo) {
                candidates.extend(scale_lift(&w, n));
            }
        }
    }
    // Largest first; ties keep the earliest source.
    let best = candidates.into_iter().rev().max_by_key(|c| c.len());
    memo.insert(m, best.clone());
    best
}

/// Bounds on `tau(n)` from `known` values, the product rule, the `2p` rule
/// and explicit witnesses.
pub fn upper_bounds(n: Modulus, known: &KnownTau) -> Bounds {
    let m = n.get();
    let (upper, upper_note) = UpperMemo { known, memo: HashMap::new() }.upper(m);
    let witness = best_witness(n, &mut HashMap::new());
    let (mut lower, mut lower_note) = match &witness {
        Some(w) => (w.len(), format!("witness arc of size {}", w.len())),
        None => (0, String::from("none")),
    };
    let mut witness = witness;
    if let Some(t) = known.get(m) {
        if t > lower {
            lower = t;
            lower_note = format!("known value tau({m}) = {t}");
            witness = None;
        }
    }
    Bounds { n: m, lower, upper, lower_note, upper_note, witness }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: i64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    #[test]
    fn bound_examples() {
        let b = upper_bounds(m(22), &KnownTau::primes_only());
        assert_eq!(b.upper, 24);
        let b = upper_bounds(m(7), &KnownTau::primes_only());
        assert_eq!((b.lower, b.upper), (8, 8));
        assert!(b.witness.unwrap().is_arc());
        let b = upper_bounds(m(35), &KnownTau::primes_only());
        assert_eq!(b.upper, 40);
    }

    #[test]
    fn conic_is_maximal_arc() {
        for p in [3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let arc = conic_arc(m(p)).unwrap();
            assert_eq!(arc.len(), p as usize + 1);
            assert!(arc.is_arc());
        }
    }

    #[test]
    fn lower_never_exceeds_upper() {
        for known in [KnownTau::primes_only(), KnownTau::prime_powers(), KnownTau::published()] {
            for n in 2..=64 {
                let b = upper_bounds(m(n), &known);
                assert!(b.lower <= b.upper, "n={n}: {b:?}");
                if let Some(w) = &b.witness {
                    assert_eq!(w.len(), b.lower);
                    assert!(w.is_arc(), "n={n}");
                }
            }
        }
    }

    #[test]
    fn published_values_are_consistent_with_arithmetic() {
        let arithmetic = KnownTau::primes_only();
        for (n, t) in PUBLISHED {
            let b = upper_bounds(m(n as i64), &arithmetic);
            assert!(t <= b.upper, "n={n}");
            assert!(b.lower <= t, "n={n}");
        }
    }

    #[test]
    fn figure_witnesses_are_used() {
        let b = upper_bounds(m(22), &KnownTau::primes_only());
        assert_eq!(b.lower, 18);
        assert!(b.witness.is_some());
    }
}
