//! Formal characters stored on dominant representatives, Freudenthal
//! multiplicities, the Weyl dimension formula, Casimir eigenvalues, and
//! decomposition of characters into irreducibles.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rational::{Q, q};
use crate::rootsys::{RootSystem, Weight};

/// Size guards shared by the engines.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Largest admissible dimension of a single irreducible character.
    pub max_dim: u128,
    /// Largest admissible mass of a reducible character.
    pub max_mass: u128,
    /// Largest Weyl orbit that may be expanded explicitly.
    pub max_orbit: usize,
    /// Iteration bound for greedy decomposition.
    pub max_iterations: usize,
    /// Rank guard for the Kostant oracle.
    pub kostant_max_rank: usize,
    /// Largest degree accepted by the plethysm engines.
    pub max_plethysm_degree: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_dim: 1 << 40,
            max_mass: 1 << 48,
            max_orbit: 1 << 22,
            max_iterations: 1 << 22,
            kostant_max_rank: 6,
            max_plethysm_degree: 6,
        }
    }
}

/// A Weyl-invariant integer combination of weights, kept on dominant
/// representatives. Entries are never zero.
#[derive(Clone, PartialEq, Eq)]
pub struct FormalCharacter {
    rank: usize,
    dom: BTreeMap<Weight, i128>,
}

impl fmt::Debug for FormalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.dom.iter()).finish()
    }
}

impl FormalCharacter {
    pub fn zero(rank: usize) -> Self {
        FormalCharacter {
            rank,
            dom: BTreeMap::new(),
        }
    }

    pub fn trivial(rank: usize) -> Self {
        let mut c = Self::zero(rank);
        c.dom.insert(Weight::zero(rank), 1);
        c
    }

    /// Builds a character from multiplicities on dominant weights.
    pub fn from_dominant(rank: usize, entries: impl IntoIterator<Item = (Weight, i128)>) -> Result<Self> {
        let mut c = Self::zero(rank);
        for (w, m) in entries {
            if w.len() != rank {
                return Err(Error::RankMismatch {
                    weight: w.to_string(),
                    got: w.len(),
                    expected: rank,
                });
            }
            if !w.is_dominant() {
                return Err(Error::NotDominant(w.to_string()));
            }
            c.add(w, m);
        }
        Ok(c)
    }

    /// Builds a character from a full weight multiset, checking Weyl symmetry.
    pub fn from_weights(rs: &RootSystem, weights: impl IntoIterator<Item = (Weight, i128)>) -> Result<Self> {
        let mut full: HashMap<Weight, i128> = HashMap::new();
        for (w, m) in weights {
            rs.check(&w)?;
            *full.entry(w).or_default() += m;
        }
        full.retain(|_, m| *m != 0);
        for (w, &m) in &full {
            for i in 0..rs.rank() {
                let r = rs.reflect(w, i);
                if full.get(&r).copied().unwrap_or(0) != m {
                    return Err(Error::NotSymmetric(w.to_string()));
                }
            }
        }
        Ok(FormalCharacter {
            rank: rs.rank(),
            dom: full.into_iter().filter(|(w, _)| w.is_dominant()).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.dom.is_empty()
    }

    /// Dominant weights with nonzero multiplicity.
    pub fn dominant(&self) -> &BTreeMap<Weight, i128> {
        &self.dom
    }

    pub fn len(&self) -> usize {
        self.dom.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dom.is_empty()
    }

    /// Multiplicity of an arbitrary weight.
    pub fn mult(&self, rs: &RootSystem, w: &Weight) -> i128 {
        let (d, _) = rs.dominant_plain(w);
        self.mult_dominant(&d)
    }

    pub fn mult_dominant(&self, d: &Weight) -> i128 {
        self.dom.get(d).copied().unwrap_or(0)
    }

    pub fn add(&mut self, w: Weight, m: i128) {
        if m == 0 {
            return;
        }
        let e = self.dom.entry(w.clone()).or_insert(0);
        *e += m;
        if *e == 0 {
            self.dom.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, other: &FormalCharacter, c: i128) {
        if c == 0 {
            return;
        }
        for (w, &m) in &other.dom {
            let e = self.dom.entry(w.clone()).or_insert(0);
            *e += c * m;
        }
        self.dom.retain(|_, m| *m != 0);
    }

    pub fn scaled(&self, c: i128) -> FormalCharacter {
        let mut out = Self::zero(self.rank);
        out.add_scaled(self, c);
        out
    }

    /// Exact division of every multiplicity by `d`.
    pub fn div_exact(&self, d: i128) -> Result<FormalCharacter> {
        let mut out = Self::zero(self.rank);
        for (w, &m) in &self.dom {
            if m % d != 0 {
                return Err(Error::Internal(format!(
                    "multiplicity {m} at {w} not divisible by {d}"
                )));
            }
            out.dom.insert(w.clone(), m / d);
        }
        Ok(out)
    }

    /// Sum of all multiplicities over the full weight multiset.
    pub fn mass(&self, rs: &RootSystem) -> i128 {
        self.dom
            .iter()
            .map(|(w, &m)| m * rs.orbit_size(w) as i128)
            .sum()
    }

    /// Number of distinct weights in the full support.
    pub fn support_size(&self, rs: &RootSystem) -> u128 {
        self.dom.keys().map(|w| rs.orbit_size(w)).sum()
    }

    /// Every weight with its multiplicity, orbit by orbit.
    pub fn full_weights(&self, rs: &RootSystem, limits: &Limits) -> Result<Vec<(Weight, i128)>> {
        let mut out = Vec::new();
        for (w, &m) in &self.dom {
            for v in rs.weyl_orbit(w, limits.max_orbit)? {
                out.push((v, m));
            }
        }
        Ok(out)
    }

    /// `psi^j`: every weight scaled by `j`.
    pub fn adams(&self, j: i32) -> FormalCharacter {
        FormalCharacter {
            rank: self.rank,
            dom: self.dom.iter().map(|(w, &m)| (w.scale(j), m)).collect(),
        }
    }

    /// Product of characters.
    pub fn mul(&self, other: &FormalCharacter, rs: &RootSystem, limits: &Limits) -> Result<FormalCharacter> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.rank));
        }
        let (big, small) = if self.support_size(rs) >= other.support_size(rs) {
            (self, other)
        } else {
            (other, self)
        };
        let mass_bound = big.abs_mass(rs).saturating_mul(small.abs_mass(rs));
        if mass_bound > limits.max_mass {
            return Err(Error::LimitExceeded(format!(
                "character product of mass up to {mass_bound}"
            )));
        }
        let f = small.full_weights(rs, limits)?;
        let mut cand: HashSet<Weight> = HashSet::new();
        for d in big.dom.keys() {
            for (b, _) in &f {
                let mut s = d + b;
                rs.dominant_in_place(&mut s);
                cand.insert(s);
            }
        }
        let mut cand: Vec<Weight> = cand.into_iter().collect();
        cand.sort();
        // coefficient at delta = sum_b m_small(b) * m_big(delta - b)
        let coeffs: Vec<(Weight, i128)> = cand
            .into_par_iter()
            .map(|delta| {
                let mut c = 0i128;
                for (b, mb) in &f {
                    let mut x = &delta - b;
                    rs.dominant_in_place(&mut x);
                    if let Some(ma) = big.dom.get(&x) {
                        c += mb * ma;
                    }
                }
                (delta, c)
            })
            .filter(|(_, c)| *c != 0)
            .collect();
        Ok(FormalCharacter {
            rank: self.rank,
            dom: coeffs.into_iter().collect(),
        })
    }

    fn abs_mass(&self, rs: &RootSystem) -> u128 {
        self.dom
            .iter()
            .map(|(w, &m)| m.unsigned_abs() * rs.orbit_size(w))
            .sum()
    }

    pub fn sum(&self, other: &FormalCharacter) -> FormalCharacter {
        let mut out = self.clone();
        out.add_scaled(other, 1);
        out
    }

    pub fn difference(&self, other: &FormalCharacter) -> FormalCharacter {
        let mut out = self.clone();
        out.add_scaled(other, -1);
        out
    }
}

/// Which invariant form the Casimir eigenvalue is measured in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CasimirNormalization {
    /// `(highest root, highest root) = 2`; eigenvalue `(lambda, lambda + 2 rho)`.
    HighestRoot,
    /// Adjoint eigenvalue 1 on each simple factor.
    Killing,
}

impl std::str::FromStr for CasimirNormalization {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "highest-root" | "highest_root" | "hr" => Ok(Self::HighestRoot),
            "killing" => Ok(Self::Killing),
            _ => Err(Error::Parse(format!("unknown normalization `{s}`"))),
        }
    }
}

/// A signed multiset of irreducibles, keyed by dominant highest weight.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decomposition {
    rank: usize,
    terms: BTreeMap<Weight, i128>,
}

impl fmt::Debug for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, &m)) in self.terms.iter().rev().enumerate() {
            let sign = if m < 0 { "-" } else { "+" };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else if m < 0 {
                write!(f, "-")?;
            }
            if m.abs() != 1 {
                write!(f, "{}", m.abs())?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl Decomposition {
    pub fn new(rank: usize) -> Self {
        Decomposition {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn single(w: Weight) -> Self {
        let mut d = Self::new(w.len());
        d.add(w, 1);
        d
    }

    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (Weight, i128)>) -> Result<Self> {
        let mut d = Self::new(rank);
        for (w, m) in terms {
            if w.len() != rank {
                return Err(Error::RankMismatch {
                    weight: w.to_string(),
                    got: w.len(),
                    expected: rank,
                });
            }
            if !w.is_dominant() {
                return Err(Error::NotDominant(w.to_string()));
            }
            d.add(w, m);
        }
        Ok(d)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn add(&mut self, w: Weight, m: i128) {
        if m == 0 {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert(0);
        *e += m;
        if *e == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, other: &Decomposition, c: i128) {
        for (w, &m) in &other.terms {
            self.add(w.clone(), c * m);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Weight, i128> {
        &self.terms
    }

    pub fn get(&self, w: &Weight) -> i128 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when some multiplicity is negative.
    pub fn is_virtual(&self) -> bool {
        self.terms.values().any(|&m| m < 0)
    }

    /// Signed total dimension.
    pub fn dim(&self, rs: &RootSystem) -> Result<i128> {
        let mut s = 0i128;
        for (w, &m) in &self.terms {
            let d = i128::try_from(weyl_dimension(rs, w)?)
                .map_err(|_| Error::Overflow("dimension".into()))?;
            s = s
                .checked_add(m.checked_mul(d).ok_or_else(|| Error::Overflow("dimension".into()))?)
                .ok_or_else(|| Error::Overflow("dimension".into()))?;
        }
        Ok(s)
    }

    /// `self - other` as a decomposition.
    pub fn minus(&self, other: &Decomposition) -> Decomposition {
        let mut out = self.clone();
        out.add_scaled(other, -1);
        out
    }

    /// True when every term of `other` appears here with at least its multiplicity.
    pub fn contains(&self, other: &Decomposition) -> bool {
        other.terms.iter().all(|(w, &m)| self.get(w) >= m)
    }

    /// Character `sum m * ch(V_w)`.
    pub fn character(&self, rs: &RootSystem, limits: &Limits) -> Result<FormalCharacter> {
        let mut out = FormalCharacter::zero(self.rank);
        for (w, &m) in &self.terms {
            out.add_scaled(&*irr_character(rs, w, limits)?, m);
        }
        Ok(out)
    }
}

/// Weyl dimension formula `prod (lambda + rho, beta) / (rho, beta)`.
pub fn weyl_dimension(rs: &RootSystem, lambda: &Weight) -> Result<u128> {
    rs.check(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let lr = lambda + &rs.rho();
    let rho = rs.rho();
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for beta in rs.positive_roots() {
        num *= beta.pair_scaled(&lr);
        den *= beta.pair_scaled(&rho);
    }
    let (quo, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(Error::Internal(format!("Weyl dimension of {lambda} not integral")));
    }
    quo.to_u128()
        .ok_or_else(|| Error::Overflow(format!("dimension of {lambda}")))
}

/// Casimir eigenvalue on `V_lambda`. In Killing mode a product algebra uses
/// the sum over factors of each factor's Killing-normalized eigenvalue.
pub fn casimir(rs: &RootSystem, lambda: &Weight, norm: CasimirNormalization) -> Result<Q> {
    rs.check(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let d = rs.form_denom();
    match norm {
        CasimirNormalization::HighestRoot => Ok(q(rs.casimir_scaled(lambda), d)),
        CasimirNormalization::Killing => {
            let mut total = Q::zero();
            for f in 0..rs.num_factors() {
                let part = rs.factor_part(lambda, f);
                let h = rs.dual_coxeter()[f] as i64;
                total += q(rs.casimir_scaled(&part), 2 * h * d);
            }
            Ok(total)
        }
    }
}

/// Dominant weights of `V_lambda`, ordered by increasing depth below `lambda`.
pub fn dominant_weights(rs: &RootSystem, lambda: &Weight) -> Vec<Weight> {
    let mut seen: HashSet<Weight> = HashSet::from([lambda.clone()]);
    let mut queue = VecDeque::from([lambda.clone()]);
    let mut out = Vec::new();
    while let Some(mu) = queue.pop_front() {
        for beta in rs.positive_roots() {
            let nu = &mu - &beta.weight;
            if nu.is_dominant() && seen.insert(nu.clone()) {
                queue.push_back(nu);
            }
        }
        out.push(mu);
    }
    let depth = |w: &Weight| rs.height_scaled(&(lambda - w));
    out.sort_by(|a, b| depth(a).cmp(&depth(b)).then_with(|| b.cmp(a)));
    out
}

/// Character of `V_lambda` by Freudenthal's recursion, cached per root system.
pub fn irr_character(rs: &RootSystem, lambda: &Weight, limits: &Limits) -> Result<Arc<FormalCharacter>> {
    rs.check(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    if let Some(c) = rs.char_cache.lock().unwrap().get(lambda) {
        return Ok(c.clone());
    }
    let dim = weyl_dimension(rs, lambda)?;
    if dim > limits.max_dim {
        return Err(Error::LimitExceeded(format!(
            "irreducible {lambda} of dimension {dim}"
        )));
    }
    let ch = Arc::new(freudenthal(rs, lambda)?);
    rs.char_cache
        .lock()
        .unwrap()
        .insert(lambda.clone(), ch.clone());
    Ok(ch)
}

fn freudenthal(rs: &RootSystem, lambda: &Weight) -> Result<FormalCharacter> {
    let rho = rs.rho();
    let lr = lambda + &rho;
    let top = rs.inner_scaled(&lr, &lr);
    let doms = dominant_weights(rs, lambda);
    let mut mult: HashMap<Weight, i128> = HashMap::with_capacity(doms.len());
    for mu in &doms {
        if mu == lambda {
            mult.insert(mu.clone(), 1);
            continue;
        }
        let mr = mu + &rho;
        let gap = (top - rs.inner_scaled(&mr, &mr)) as i128;
        let mut acc: i128 = 0;
        for beta in rs.positive_roots() {
            let mut nu = mu + &beta.weight;
            loop {
                let (d, _) = rs.dominant_plain(&nu);
                let Some(&m) = mult.get(&d) else { break };
                acc += m * beta.pair_scaled(&nu) as i128;
                nu = &nu + &beta.weight;
            }
        }
        let num = 2 * acc;
        if gap <= 0 || num % gap != 0 {
            return Err(Error::Internal(format!(
                "Freudenthal recursion at {mu} in V{lambda}: {num}/{gap}"
            )));
        }
        mult.insert(mu.clone(), num / gap);
    }
    Ok(FormalCharacter {
        rank: rs.rank(),
        dom: mult.into_iter().collect(),
    })
}

/// Kostant's multiplicity formula; exponential, intended as an oracle.
pub fn kostant_multiplicity(rs: &RootSystem, lambda: &Weight, mu: &Weight, limits: &Limits) -> Result<i128> {
    rs.check(lambda)?;
    rs.check(mu)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    if rs.rank() > limits.kostant_max_rank {
        return Err(Error::LimitExceeded(format!(
            "Kostant formula on rank {} (guard {})",
            rs.rank(),
            limits.kostant_max_rank
        )));
    }
    let rho = rs.rho();
    let target = mu + &rho;
    let roots: Vec<Vec<i32>> = rs.positive_roots().iter().map(|r| r.simple.clone()).collect();
    let mut memo: HashMap<(Vec<i32>, usize), i128> = HashMap::new();
    let mut total = 0i128;
    // the orbit of the regular weight lambda + rho is a W-torsor
    let start = lambda + &rho;
    let mut seen: HashMap<Weight, i128> = HashMap::from([(start.clone(), 1)]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        let sign = seen[&v];
        if let Some(c) = rs.root_coords(&(&v - &target)) {
            if c.iter().all(|&x| x >= 0) {
                total += sign * partition_count(&c, 0, &roots, &mut memo);
            }
        }
        for i in 0..rs.rank() {
            let r = rs.reflect(&v, i);
            if !seen.contains_key(&r) {
                seen.insert(r.clone(), -sign);
                queue.push_back(r);
            }
        }
    }
    Ok(total)
}

fn partition_count(
    gamma: &[i32],
    idx: usize,
    roots: &[Vec<i32>],
    memo: &mut HashMap<(Vec<i32>, usize), i128>,
) -> i128 {
    if gamma.iter().all(|&x| x == 0) {
        return 1;
    }
    if idx == roots.len() {
        return 0;
    }
    let key = (gamma.to_vec(), idx);
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let beta = &roots[idx];
    let mut g = gamma.to_vec();
    let mut total = 0;
    loop {
        total += partition_count(&g, idx + 1, roots, memo);
        for (x, b) in g.iter_mut().zip(beta) {
            *x -= b;
        }
        if g.iter().any(|&x| x < 0) {
            break;
        }
    }
    memo.insert(key, total);
    total
}

/// Greedy decomposition: repeatedly strip the irreducible whose highest
/// weight is maximal by height, ties broken lexicographically.
pub fn decompose_character(rs: &RootSystem, chi: &FormalCharacter, limits: &Limits) -> Result<Decomposition> {
    if chi.rank() != rs.rank() {
        return Err(Error::RankMismatch {
            weight: "character".into(),
            got: chi.rank(),
            expected: rs.rank(),
        });
    }
    let key = |w: &Weight| (rs.height_scaled(w), w.clone());
    let mut rest: BTreeMap<(i64, Weight), i128> =
        chi.dom.iter().map(|(w, &m)| (key(w), m)).collect();
    let mut out = Decomposition::new(rs.rank());
    let mut steps = 0usize;
    while let Some(((_, top), c)) = rest.pop_last() {
        steps += 1;
        if steps > limits.max_iterations {
            return Err(Error::LimitExceeded("decomposition iterations".into()));
        }
        out.add(top.clone(), c);
        let irr = irr_character(rs, &top, limits)?;
        for (w, &m) in irr.dominant() {
            if *w == top {
                continue;
            }
            let k = key(w);
            let e = rest.entry(k.clone()).or_insert(0);
            *e -= c * m;
            if *e == 0 {
                rest.remove(&k);
            }
        }
    }
    Ok(out)
}

/// Decomposition by the Racah-Speiser reflection rule applied to every weight.
pub fn decompose_racah_speiser(rs: &RootSystem, chi: &FormalCharacter, limits: &Limits) -> Result<Decomposition> {
    let mut out = Decomposition::new(rs.rank());
    for (w, m) in chi.full_weights(rs, limits)? {
        let (d, s) = rs.dominant_conjugate(&w);
        if s != 0 {
            out.add(d, s as i128 * m);
        }
    }
    Ok(out)
}

/// `V_lambda (x) V_mu` by Klimyk's formula over the weights of the smaller factor.
pub fn tensor(rs: &RootSystem, lambda: &Weight, mu: &Weight, limits: &Limits) -> Result<Decomposition> {
    let (big, small) = if weyl_dimension(rs, lambda)? >= weyl_dimension(rs, mu)? {
        (lambda, mu)
    } else {
        (mu, lambda)
    };
    let ch = irr_character(rs, small, limits)?;
    let mut out = Decomposition::new(rs.rank());
    for (nu, m) in ch.full_weights(rs, limits)? {
        let (d, s) = rs.dominant_conjugate(&(big + &nu));
        if s != 0 {
            out.add(d, s as i128 * m);
        }
    }
    Ok(out)
}

/// Tensor product of two decompositions, term by term.
pub fn tensor_decompositions(
    rs: &RootSystem,
    a: &Decomposition,
    b: &Decomposition,
    limits: &Limits,
) -> Result<Decomposition> {
    let mut out = Decomposition::new(rs.rank());
    for (x, &m) in a.terms() {
        for (y, &n) in b.terms() {
            out.add_scaled(&tensor(rs, x, y, limits)?, m * n);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;
    use proptest::prelude::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::from_str_type(s).unwrap()
    }

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(weyl_dimension(&rs("E7"), &w("0,0,0,0,0,0,1")).unwrap(), 56);
        assert_eq!(weyl_dimension(&rs("E6"), &w("1,0,0,0,0,0")).unwrap(), 27);
        assert_eq!(weyl_dimension(&rs("E8"), &w("0,0,0,0,0,0,0,1")).unwrap(), 248);
        assert_eq!(weyl_dimension(&rs("G2"), &w("1,0")).unwrap(), 7);
        assert_eq!(weyl_dimension(&rs("C3"), &w("0,0,1")).unwrap(), 14);
        assert_eq!(weyl_dimension(&rs("B3"), &w("0,0,1")).unwrap(), 8);
        assert_eq!(weyl_dimension(&rs("A1xA1xA1"), &w("1,1,1")).unwrap(), 8);
        assert!(weyl_dimension(&rs("A2"), &w("-1,0")).is_err());
    }

    #[test]
    fn casimir_values() {
        let c3 = rs("C3");
        assert_eq!(
            casimir(&c3, &w("0,0,1"), CasimirNormalization::Killing).unwrap(),
            q(15, 16)
        );
        let e7 = rs("E7");
        assert_eq!(
            casimir(&e7, &w("0,0,0,0,0,0,1"), CasimirNormalization::HighestRoot).unwrap(),
            q(57, 2)
        );
        for t in ["A3", "B4", "C3", "D5", "G2", "F4", "E6"] {
            let r = rs(t);
            let hr = r.highest_root().clone();
            assert_eq!(casimir(&r, &hr, CasimirNormalization::Killing).unwrap(), qi(1), "{t}");
        }
    }

    #[test]
    fn small_characters() {
        let a2 = rs("A2");
        let l = Limits::default();
        let adj = irr_character(&a2, &w("1,1"), &l).unwrap();
        assert_eq!(adj.mult_dominant(&w("0,0")), 2);
        let g2 = rs("G2");
        let v7 = irr_character(&g2, &w("1,0"), &l).unwrap();
        assert_eq!(v7.mult_dominant(&w("0,0")), 1);
        let a3 = rs("A3");
        let v = irr_character(&a3, &w("0,1,0"), &l).unwrap();
        assert!(v.dominant().values().all(|&m| m == 1));
        assert_eq!(v.mass(&a3), 6);
    }

    #[test]
    fn mass_equals_dimension_on_a_battery() {
        let l = Limits::default();
        for (t, ws) in [
            ("B3", vec!["1,1,1", "2,0,1", "0,2,0"]),
            ("C4", vec!["1,0,1,0", "0,0,0,2"]),
            ("G2", vec!["2,1", "0,3"]),
            ("F4", vec!["1,0,0,1", "0,0,1,0"]),
            ("E6", vec!["1,1,0,0,0,0", "0,0,0,1,0,0"]),
            ("E7", vec!["1,0,0,0,0,0,1"]),
            ("A2xB2", vec!["1,1,1,1"]),
        ] {
            let r = rs(t);
            for s in ws {
                let lam = w(s);
                let ch = irr_character(&r, &lam, &l).unwrap();
                assert_eq!(ch.mass(&r) as u128, weyl_dimension(&r, &lam).unwrap(), "{t} {s}");
            }
        }
    }

    #[test]
    fn kostant_agrees_with_freudenthal_on_examples() {
        let l = Limits::default();
        let a2 = rs("A2");
        assert_eq!(kostant_multiplicity(&a2, &w("1,1"), &w("0,0"), &l).unwrap(), 2);
        assert_eq!(kostant_multiplicity(&a2, &w("1,1"), &w("1,1"), &l).unwrap(), 1);
        // lambda + alpha_1 lies outside the weight hull
        assert_eq!(kostant_multiplicity(&a2, &w("1,1"), &w("3,0"), &l).unwrap(), 0);
        assert!(kostant_multiplicity(&rs("E7"), &rs("E7").rho(), &rs("E7").rho(), &l).is_err());
    }

    #[test]
    fn clebsch_gordan() {
        let a1 = rs("A1");
        let l = Limits::default();
        let v = irr_character(&a1, &w("1"), &l).unwrap();
        let sq = v.mul(&v, &a1, &l).unwrap();
        let d = decompose_character(&a1, &sq, &l).unwrap();
        assert_eq!(d, Decomposition::from_terms(1, [(w("2"), 1), (w("0"), 1)]).unwrap());
    }

    #[test]
    fn e6_adjoint_times_vector() {
        let e6 = rs("E6");
        let l = Limits::default();
        let d = tensor(&e6, &w("0,1,0,0,0,0"), &w("1,0,0,0,0,0"), &l).unwrap();
        let expect = Decomposition::from_terms(
            6,
            [(w("1,0,0,0,0,0"), 1), (w("0,0,0,0,1,0"), 1), (w("1,1,0,0,0,0"), 1)],
        )
        .unwrap();
        assert_eq!(d, expect);
        assert_eq!(d.dim(&e6).unwrap(), 78 * 27);
    }

    #[test]
    fn symplectic_pairing_occurs_once() {
        let c3 = rs("C3");
        let d = tensor(&c3, &w("0,0,1"), &w("0,0,1"), &Limits::default()).unwrap();
        assert_eq!(d.get(&w("0,0,0")), 1);
    }

    #[test]
    fn racah_speiser_matches_greedy() {
        let b3 = rs("B3");
        let l = Limits::default();
        let a = irr_character(&b3, &w("0,0,1"), &l).unwrap();
        let b = irr_character(&b3, &w("1,0,0"), &l).unwrap();
        let p = a.mul(&b, &b3, &l).unwrap();
        assert_eq!(
            decompose_character(&b3, &p, &l).unwrap(),
            decompose_racah_speiser(&b3, &p, &l).unwrap()
        );
    }

    #[test]
    fn asymmetric_input_is_rejected() {
        let a1 = rs("A1");
        assert!(FormalCharacter::from_weights(&a1, [(w("1"), 1)]).is_err());
        assert!(FormalCharacter::from_weights(&a1, [(w("1"), 1), (w("-1"), 1)]).is_ok());
    }

    fn small_dominant(rank: usize, max: i32) -> impl Strategy<Value = Weight> {
        proptest::collection::vec(0..=max, rank).prop_map(Weight::new)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn freudenthal_equals_kostant_rank_two(lam in small_dominant(2, 2), t in 0usize..3) {
            let r = rs(["A2", "B2", "G2"][t]);
            let l = Limits::default();
            let ch = irr_character(&r, &lam, &l).unwrap();
            for (mu, &m) in ch.dominant() {
                prop_assert_eq!(kostant_multiplicity(&r, &lam, mu, &l).unwrap(), m);
            }
        }

        #[test]
        fn tensor_is_commutative_and_conserves_dimension(
            a in small_dominant(3, 1),
            b in small_dominant(3, 2),
            t in 0usize..3,
        ) {
            let r = rs(["A3", "B3", "C3"][t]);
            let l = Limits::default();
            let ab = tensor(&r, &a, &b, &l).unwrap();
            let ba = tensor(&r, &b, &a, &l).unwrap();
            prop_assert_eq!(&ab, &ba);
            prop_assert!(!ab.is_virtual());
            let dims = weyl_dimension(&r, &a).unwrap() * weyl_dimension(&r, &b).unwrap();
            prop_assert_eq!(ab.dim(&r).unwrap() as u128, dims);
        }

        #[test]
        fn tensor_is_associative(
            a in small_dominant(2, 1),
            b in small_dominant(2, 1),
            c in small_dominant(2, 1),
        ) {
            let r = rs("A2");
            let l = Limits::default();
            let left = tensor_decompositions(&r, &tensor(&r, &a, &b, &l).unwrap(), &Decomposition::single(c.clone()), &l).unwrap();
            let right = tensor_decompositions(&r, &Decomposition::single(a.clone()), &tensor(&r, &b, &c, &l).unwrap(), &l).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn decomposition_round_trip(
            terms in proptest::collection::vec((small_dominant(2, 2), 1i128..3), 1..4),
            t in 0usize..2,
        ) {
            let r = rs(["B2", "G2"][t]);
            let l = Limits::default();
            let d = Decomposition::from_terms(2, terms).unwrap();
            let ch = d.character(&r, &l).unwrap();
            prop_assert_eq!(decompose_character(&r, &ch, &l).unwrap(), d);
        }

        #[test]
        fn casimir_of_cartan_sum_expands(a in small_dominant(4, 2), b in small_dominant(4, 2)) {
            let r = rs("F4");
            let hr = CasimirNormalization::HighestRoot;
            let direct = casimir(&r, &(&a + &b), hr).unwrap();
            let expanded = casimir(&r, &a, hr).unwrap() + casimir(&r, &b, hr).unwrap()
                + qi(2) * r.inner(&a, &b).unwrap();
            prop_assert_eq!(direct, expanded);
        }

        #[test]
        fn dominant_conjugate_is_idempotent(coords in proptest::collection::vec(-4i32..5, 4)) {
            let r = rs("D4");
            let (d, s) = r.dominant_conjugate(&Weight::new(coords));
            if s != 0 {
                prop_assert_eq!(r.dominant_conjugate(&d), (d.clone(), 1));
            }
        }

        #[test]
        fn orbit_size_matches_stabilizer_count(lam in small_dominant(4, 1)) {
            let r = rs("B4");
            let orbit = r.weyl_orbit(&lam, 1 << 12).unwrap();
            prop_assert_eq!(orbit.len() as u128, r.orbit_size(&lam));
        }
    }
}
