//! Root systems in Bourbaki numbering, weights in the fundamental-weight
//! basis, and the Weyl-group primitives the rest of the crate runs on.
//!
//! Every simple factor carries the invariant form normalized so that its
//! highest root has square length 2. Products are block diagonal.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::chars::FormalCharacter;
use crate::diagram;
use crate::error::{Error, Result};
use crate::rational::{Q, q, qi};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ];

    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::InvalidType(format!("{}{}", family.letter(), rank)));
        }
        Ok(SimpleType { family, rank })
    }

    /// Squared lengths of the simple roots, long roots normalized to 2.
    fn simple_norms(&self) -> Vec<Q> {
        let n = self.rank;
        match self.family {
            Family::A | Family::D | Family::E => vec![qi(2); n],
            Family::B => (0..n).map(|i| if i + 1 == n { qi(1) } else { qi(2) }).collect(),
            Family::C => (0..n).map(|i| if i + 1 == n { qi(2) } else { qi(1) }).collect(),
            Family::F => vec![qi(2), qi(2), qi(1), qi(1)],
            Family::G => vec![q(2, 3), qi(2)],
        }
    }

    /// Bourbaki bonds as (i, j) zero-based.
    fn bonds(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        let chain = |k: usize| (0..k.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
        match self.family {
            Family::A | Family::B | Family::C | Family::F | Family::G => chain(n),
            Family::D => {
                let mut b = chain(n - 1);
                b.push((n - 3, n - 1));
                b
            }
            Family::E => {
                let mut b = vec![(0, 2), (1, 3)];
                b.extend((2..n - 1).map(|i| (i, i + 1)));
                b
            }
        }
    }

    /// Symmetric matrix of inner products of simple roots.
    fn simple_gram(&self) -> Vec<Vec<Q>> {
        let norms = self.simple_norms();
        let n = self.rank;
        let mut g = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            g[i][i] = norms[i].clone();
        }
        for (i, j) in self.bonds() {
            // For a bond between roots of lengths a <= b the product is -b/2.
            let longer = if norms[i] > norms[j] { &norms[i] } else { &norms[j] };
            let v = -longer / qi(2);
            g[i][j] = v.clone();
            g[j][i] = v;
        }
        g
    }

    /// Cartan matrix with `A[i][j] = 2(a_i, a_j) / (a_j, a_j)`.
    pub fn cartan(&self) -> Vec<Vec<i32>> {
        let g = self.simple_gram();
        let n = self.rank;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = qi(2) * &g[i][j] / &g[j][j];
                        debug_assert!(v.is_integer());
                        i32::try_from(v.to_integer()).expect("small Cartan entry")
                    })
                    .collect()
            })
            .collect()
    }

    /// Weyl group order from the classification.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match (self.family, self.rank) {
            (Family::A, _) => fact(n + 1),
            (Family::B, _) | (Family::C, _) => (1u128 << n) * fact(n),
            (Family::D, _) => (1u128 << (n - 1)) * fact(n),
            (Family::E, 6) => 51_840,
            (Family::E, 7) => 2_903_040,
            (Family::E, 8) => 696_729_600,
            (Family::F, _) => 1_152,
            (Family::G, _) => 12,
            _ => unreachable!("validated in SimpleType::new"),
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidType(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        SimpleType::new(family, rank)
    }
}

/// A finite product of simple types, e.g. `A1xA1xA1` or `A1xB3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraType {
    factors: Vec<SimpleType>,
}

impl AlgebraType {
    pub fn new(factors: Vec<SimpleType>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidType("empty product".into()));
        }
        Ok(AlgebraType { factors })
    }

    pub fn simple(t: SimpleType) -> Self {
        AlgebraType { factors: vec![t] }
    }

    pub fn factors(&self) -> &[SimpleType] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank).sum()
    }

    pub fn is_simple(&self) -> bool {
        self.factors.len() == 1
    }
}

impl fmt::Display for AlgebraType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for AlgebraType {
    type Err = Error;
    /// Accepts `E7`, `A1xA1xA1`, `A2*A2`, `A1^3`.
    fn from_str(s: &str) -> Result<Self> {
        let mut factors = Vec::new();
        for part in s.split(['x', '*', '×']) {
            let part = part.trim();
            match part.split_once('^') {
                Some((t, e)) => {
                    let t: SimpleType = t.parse()?;
                    let e: usize = e
                        .parse()
                        .map_err(|_| Error::InvalidType(s.to_string()))?;
                    factors.extend(std::iter::repeat_n(t, e));
                }
                None => factors.push(part.parse()?),
            }
        }
        AlgebraType::new(factors)
    }
}

/// Integer coordinates in the fundamental-weight basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(SmallVec<[i32; 8]>);

impl Weight {
    pub fn new(coords: impl IntoIterator<Item = i32>) -> Self {
        Weight(coords.into_iter().collect())
    }

    pub fn zero(rank: usize) -> Self {
        Weight(SmallVec::from_elem(0, rank))
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Weight::zero(rank);
        w.0[i] = 1;
        w
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Indices of nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.0[i] != 0).collect()
    }

    pub fn scale(&self, k: i32) -> Weight {
        Weight(self.0.iter().map(|&c| c * k).collect())
    }

    pub fn permuted(&self, perm: &[usize]) -> Weight {
        let mut out = Weight::zero(self.len());
        for (i, &p) in perm.iter().enumerate() {
            out.0[p] = self.0[i];
        }
        out
    }

    pub(crate) fn coord_mut(&mut self, i: usize) -> &mut i32 {
        &mut self.0[i]
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<i32> for &Weight {
    type Output = Weight;
    fn mul(self, k: i32) -> Weight {
        self.scale(k)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Weight {
    type Err = Error;
    /// Accepts `1,0,0`, `[1,0,0]` and `[0,1|1,0]` (bars separate factors).
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        if body.trim().is_empty() {
            return Ok(Weight::new([]));
        }
        body.split([',', '|'])
            .map(|t| {
                t.trim()
                    .parse::<i32>()
                    .map_err(|_| Error::Parse(format!("bad weight `{s}`")))
            })
            .collect::<Result<SmallVec<[i32; 8]>>>()
            .map(Weight)
    }
}

/// A dominant weight viewed as labels on the nodes of the Dynkin diagram.
#[derive(Clone, Debug)]
pub struct MarkedDiagram {
    pub root_system: Arc<RootSystem>,
    pub marking: Weight,
}

impl MarkedDiagram {
    pub fn new(root_system: Arc<RootSystem>, marking: Weight) -> Result<Self> {
        root_system.check(&marking)?;
        if !marking.is_dominant() {
            return Err(Error::NotDominant(marking.to_string()));
        }
        Ok(MarkedDiagram {
            root_system,
            marking,
        })
    }
}

#[derive(Clone, Debug)]
pub struct Root {
    /// Coordinates in the simple-root basis.
    pub simple: Vec<i32>,
    /// The same root in the fundamental-weight basis.
    pub weight: Weight,
    pub height: i32,
    /// `(beta, beta)` times the form denominator.
    pub norm_scaled: i64,
    /// `(omega_i, beta)` times the form denominator, for each i.
    pub(crate) pairing: Vec<i64>,
}

impl Root {
    /// `(mu, beta)` times the form denominator.
    pub(crate) fn pair_scaled(&self, mu: &Weight) -> i64 {
        mu.coords()
            .iter()
            .zip(&self.pairing)
            .map(|(&a, &p)| a as i64 * p)
            .sum()
    }
}

pub struct RootSystem {
    ty: AlgebraType,
    rank: usize,
    factor_offsets: Vec<usize>,
    cartan: Vec<Vec<i32>>,
    simple_norms: Vec<Q>,
    /// Gram matrix of fundamental weights times `form_denom`.
    gram: Vec<Vec<i64>>,
    form_denom: i64,
    /// Inverse Cartan matrix times `inv_denom`.
    cartan_inv: Vec<Vec<i64>>,
    inv_denom: i64,
    simple_roots: Vec<Weight>,
    positive_roots: Vec<Root>,
    highest_roots: Vec<Weight>,
    dual_coxeter: Vec<u32>,
    pub(crate) char_cache: Mutex<HashMap<Weight, Arc<FormalCharacter>>>,
    parabolic_cache: Mutex<HashMap<Vec<usize>, u128>>,
}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootSystem({})", self.ty)
    }
}

impl PartialEq for RootSystem {
    fn eq(&self, o: &Self) -> bool {
        self.ty == o.ty
    }
}

fn invert(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut inv: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("invertible Cartan matrix");
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let (x, y) = (&a[col][j] * &f, &inv[col][j] * &f);
                    a[r][j] -= x;
                    inv[r][j] -= y;
                }
            }
        }
    }
    inv
}

fn lcm_of_denoms<'a>(it: impl IntoIterator<Item = &'a Q>) -> i64 {
    let l = it
        .into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    i64::try_from(l).expect("small denominator")
}

fn scale_to_i64(x: &Q, d: i64) -> i64 {
    let v = x * qi(d);
    debug_assert!(v.is_integer());
    i64::try_from(v.to_integer()).expect("small scaled entry")
}

impl RootSystem {
    pub fn new(ty: AlgebraType) -> Result<Self> {
        let rank = ty.rank();
        let mut cartan = vec![vec![0i32; rank]; rank];
        let mut simple_norms = Vec::with_capacity(rank);
        let mut factor_offsets = Vec::new();
        let mut off = 0;
        for f in ty.factors() {
            factor_offsets.push(off);
            let c = f.cartan();
            for i in 0..f.rank {
                for j in 0..f.rank {
                    cartan[off + i][off + j] = c[i][j];
                }
            }
            simple_norms.extend(f.simple_norms());
            off += f.rank;
        }
        let cq: Vec<Vec<Q>> = cartan
            .iter()
            .map(|r| r.iter().map(|&x| qi(x as i64)).collect())
            .collect();
        let inv = invert(&cq);
        // (omega_i, omega_j) = (A^-1)_{ij} (alpha_j, alpha_j) / 2
        let gram_q: Vec<Vec<Q>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| &inv[i][j] * &simple_norms[j] / qi(2))
                    .collect()
            })
            .collect();
        let half_norms: Vec<Q> = simple_norms.iter().map(|n| n / qi(2)).collect();
        let form_denom = lcm_of_denoms(gram_q.iter().flatten().chain(half_norms.iter()));
        let gram = gram_q
            .iter()
            .map(|r| r.iter().map(|x| scale_to_i64(x, form_denom)).collect())
            .collect();
        let inv_denom = lcm_of_denoms(inv.iter().flatten());
        let cartan_inv = inv
            .iter()
            .map(|r| r.iter().map(|x| scale_to_i64(x, inv_denom)).collect())
            .collect();
        let simple_roots = (0..rank).map(|i| Weight::new(cartan[i].clone())).collect();

        let mut rs = RootSystem {
            ty,
            rank,
            factor_offsets,
            cartan,
            simple_norms,
            gram,
            form_denom,
            cartan_inv,
            inv_denom,
            simple_roots,
            positive_roots: Vec::new(),
            highest_roots: Vec::new(),
            dual_coxeter: Vec::new(),
            char_cache: Mutex::new(HashMap::new()),
            parabolic_cache: Mutex::new(HashMap::new()),
        };
        rs.positive_roots = rs.generate_positive_roots(&half_norms);
        rs.highest_roots = (0..rs.ty.factors().len())
            .map(|f| {
                let range = rs.factor_range(f);
                rs.positive_roots
                    .iter()
                    .filter(|r| range.clone().any(|i| r.simple[i] != 0))
                    .max_by_key(|r| r.height)
                    .expect("nonempty factor")
                    .weight
                    .clone()
            })
            .collect();
        // theta_adjoint = (hr, hr + 2 rho) = 2 h^vee under the highest-root normalization
        rs.dual_coxeter = (0..rs.ty.factors().len())
            .map(|f| {
                let hr = rs.highest_roots[f].clone();
                let c = rs.casimir_scaled(&hr);
                let h = c / (2 * rs.form_denom);
                debug_assert_eq!(c % (2 * rs.form_denom), 0);
                h as u32
            })
            .collect();
        Ok(rs)
    }

    pub fn from_str_type(s: &str) -> Result<Self> {
        RootSystem::new(s.parse()?)
    }

    fn generate_positive_roots(&self, half_norms: &[Q]) -> Vec<Root> {
        let n = self.rank;
        let mut by_height: Vec<Vec<Vec<i32>>> = vec![
            (0..n)
                .map(|i| {
                    let mut v = vec![0; n];
                    v[i] = 1;
                    v
                })
                .collect(),
        ];
        let mut all: HashSet<Vec<i32>> = by_height[0].iter().cloned().collect();
        loop {
            let mut next = Vec::new();
            for beta in by_height.last().unwrap() {
                for i in 0..n {
                    // <beta, alpha_i^vee> = sum_j c_j A[j][i]
                    let pairing: i32 = (0..n).map(|j| beta[j] * self.cartan[j][i]).sum();
                    let mut p = 0;
                    loop {
                        let mut d = beta.clone();
                        d[i] -= p + 1;
                        if all.contains(&d) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    if p - pairing > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if all.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort();
            by_height.push(next);
        }
        let dscale: Vec<i64> = half_norms
            .iter()
            .map(|h| scale_to_i64(h, self.form_denom))
            .collect();
        by_height
            .into_iter()
            .flatten()
            .map(|simple| {
                let weight = Weight::new((0..n).map(|j| (0..n).map(|i| simple[i] * self.cartan[i][j]).sum()));
                let pairing: Vec<i64> = (0..n).map(|i| simple[i] as i64 * dscale[i]).collect();
                let norm_scaled = weight
                    .coords()
                    .iter()
                    .zip(&pairing)
                    .map(|(&a, &p)| a as i64 * p)
                    .sum();
                let height = simple.iter().sum();
                Root {
                    simple,
                    weight,
                    height,
                    norm_scaled,
                    pairing,
                }
            })
            .collect()
    }

    pub fn algebra_type(&self) -> &AlgebraType {
        &self.ty
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    /// `(alpha_i, alpha_i)`.
    pub fn simple_root_norm(&self, i: usize) -> &Q {
        &self.simple_norms[i]
    }

    pub fn is_simple(&self) -> bool {
        self.ty.is_simple()
    }

    pub fn num_factors(&self) -> usize {
        self.ty.factors().len()
    }

    pub fn factor_range(&self, f: usize) -> std::ops::Range<usize> {
        let start = self.factor_offsets[f];
        start..start + self.ty.factors()[f].rank
    }

    pub fn factor_of_node(&self, i: usize) -> usize {
        (0..self.num_factors())
            .find(|&f| self.factor_range(f).contains(&i))
            .expect("node in range")
    }

    /// Highest root of each simple factor, as a weight of the product.
    pub fn highest_roots(&self) -> &[Weight] {
        &self.highest_roots
    }

    /// Highest root of a simple system.
    pub fn highest_root(&self) -> &Weight {
        &self.highest_roots[0]
    }

    pub fn dual_coxeter(&self) -> &[u32] {
        &self.dual_coxeter
    }

    pub fn rho(&self) -> Weight {
        Weight::new(std::iter::repeat_n(1, self.rank))
    }

    pub fn two_rho(&self) -> Weight {
        Weight::new(std::iter::repeat_n(2, self.rank))
    }

    pub fn weyl_order(&self) -> u128 {
        self.ty.factors().iter().map(|f| f.weyl_order()).product()
    }

    pub fn check(&self, w: &Weight) -> Result<()> {
        if w.len() != self.rank {
            return Err(Error::RankMismatch {
                weight: w.to_string(),
                got: w.len(),
                expected: self.rank,
            });
        }
        Ok(())
    }

    pub fn form_denom(&self) -> i64 {
        self.form_denom
    }

    /// `(lambda, mu)` times the form denominator.
    pub fn inner_scaled(&self, a: &Weight, b: &Weight) -> i64 {
        let (a, b) = (a.coords(), b.coords());
        let mut s = 0i64;
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            let row = &self.gram[i];
            let t: i64 = (0..self.rank).map(|j| row[j] * b[j] as i64).sum();
            s += a[i] as i64 * t;
        }
        s
    }

    pub fn inner(&self, a: &Weight, b: &Weight) -> Result<Q> {
        self.check(a)?;
        self.check(b)?;
        Ok(q(self.inner_scaled(a, b), self.form_denom))
    }

    /// `(lambda, lambda + 2 rho)` times the form denominator.
    pub(crate) fn casimir_scaled(&self, l: &Weight) -> i64 {
        self.inner_scaled(l, &(l + &self.two_rho()))
    }

    /// Restriction of a weight to one simple factor's coordinates.
    pub fn factor_part(&self, w: &Weight, f: usize) -> Weight {
        let r = self.factor_range(f);
        let mut out = Weight::zero(self.rank);
        for i in r {
            *out.coord_mut(i) = w.coords()[i];
        }
        out
    }

    /// Simple-root coordinates of a weight times `inv_denom`.
    pub(crate) fn simple_coords_scaled(&self, w: &Weight) -> Vec<i64> {
        let c = w.coords();
        (0..self.rank)
            .map(|k| (0..self.rank).map(|i| c[i] as i64 * self.cartan_inv[i][k]).sum())
            .collect()
    }

    /// Simple-root coordinates when the weight lies in the root lattice.
    pub fn root_coords(&self, w: &Weight) -> Option<Vec<i32>> {
        self.simple_coords_scaled(w)
            .into_iter()
            .map(|x| (x % self.inv_denom == 0).then(|| (x / self.inv_denom) as i32))
            .collect()
    }

    /// Height (sum of simple-root coordinates) times `inv_denom`.
    pub(crate) fn height_scaled(&self, w: &Weight) -> i64 {
        self.simple_coords_scaled(w).iter().sum()
    }

    /// `a >= b` in the dominance order: `a - b` is a nonnegative integer
    /// combination of simple roots.
    pub fn dominates(&self, a: &Weight, b: &Weight) -> bool {
        self.simple_coords_scaled(&(a - b))
            .iter()
            .all(|&x| x >= 0 && x % self.inv_denom == 0)
    }

    /// Converts simple-root coordinates to fundamental-weight coordinates.
    pub fn from_root_coords(&self, c: &[i32]) -> Weight {
        Weight::new((0..self.rank).map(|j| (0..self.rank).map(|i| c[i] * self.cartan[i][j]).sum()))
    }

    pub fn reflect(&self, w: &Weight, i: usize) -> Weight {
        let a = w.coords()[i];
        if a == 0 {
            return w.clone();
        }
        let mut out = w.clone();
        for (j, &c) in self.cartan[i].iter().enumerate() {
            if c != 0 {
                *out.coord_mut(j) -= a * c;
            }
        }
        out
    }

    fn reflect_in_place(&self, w: &mut Weight, i: usize) {
        let a = w.coords()[i];
        for (j, &c) in self.cartan[i].iter().enumerate() {
            if c != 0 {
                *w.coord_mut(j) -= a * c;
            }
        }
    }

    /// Dominant Weyl conjugate and the length parity of the reflecting word.
    pub fn dominant_plain(&self, w: &Weight) -> (Weight, bool) {
        let mut w = w.clone();
        let mut odd = false;
        while let Some(i) = w.coords().iter().position(|&c| c < 0) {
            self.reflect_in_place(&mut w, i);
            odd = !odd;
        }
        (w, odd)
    }

    pub(crate) fn dominant_in_place(&self, w: &mut Weight) {
        while let Some(i) = w.coords().iter().position(|&c| c < 0) {
            self.reflect_in_place(w, i);
        }
    }

    /// Dot-action reduction: the dominant conjugate of `w + rho`, shifted back
    /// by `rho`, with sign `(-1)^length`; sign 0 when `w + rho` lies on a wall.
    pub fn dominant_conjugate(&self, w: &Weight) -> (Weight, i32) {
        let (d, odd) = self.dominant_plain(&(w + &self.rho()));
        if d.coords().iter().any(|&c| c == 0) {
            return (&d - &self.rho(), 0);
        }
        (&d - &self.rho(), if odd { -1 } else { 1 })
    }

    /// The Weyl orbit of `w`, starting from its dominant representative.
    pub fn weyl_orbit(&self, w: &Weight, bound: usize) -> Result<Vec<Weight>> {
        self.check(w)?;
        let (start, _) = self.dominant_plain(w);
        let mut seen: HashSet<Weight> = HashSet::from([start.clone()]);
        let mut out = vec![start.clone()];
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for i in 0..self.rank {
                if v.coords()[i] > 0 {
                    let r = self.reflect(&v, i);
                    if seen.insert(r.clone()) {
                        if out.len() >= bound {
                            return Err(Error::LimitExceeded(format!(
                                "Weyl orbit of {w} exceeds {bound} elements"
                            )));
                        }
                        out.push(r.clone());
                        queue.push_back(r);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Orbit size from |W| / |W_J|, with W_J generated by the simple
    /// reflections fixing the dominant representative.
    pub fn orbit_size(&self, w: &Weight) -> u128 {
        let (d, _) = self.dominant_plain(w);
        let zeros: Vec<usize> = (0..self.rank).filter(|&i| d.coords()[i] == 0).collect();
        self.weyl_order() / self.parabolic_order(&zeros)
    }

    /// Order of the subgroup generated by the simple reflections on `nodes`.
    pub fn parabolic_order(&self, nodes: &[usize]) -> u128 {
        if let Some(&v) = self.parabolic_cache.lock().unwrap().get(nodes) {
            return v;
        }
        let v = diagram::components(&self.cartan, nodes)
            .iter()
            .map(|comp| {
                let sub = diagram::submatrix(&self.cartan, comp);
                diagram::recognize(&sub)
                    .expect("subdiagram of a finite type is finite type")
                    .weyl_order()
            })
            .product();
        self.parabolic_cache.lock().unwrap().insert(nodes.to_vec(), v);
        v
    }

    /// `-w0(lambda)`, the highest weight of the dual module.
    pub fn dual(&self, w: &Weight) -> Weight {
        self.dominant_plain(&-w).0
    }

    /// Lowest element of the orbit of `w` under the Weyl group of `nodes`.
    pub fn lowest_in_parabolic_orbit(&self, w: &Weight, nodes: &[usize]) -> Weight {
        let mut v = w.clone();
        while let Some(&i) = nodes.iter().find(|&&i| v.coords()[i] > 0) {
            self.reflect_in_place(&mut v, i);
        }
        v
    }

    /// Node permutations preserving the Cartan matrix.
    pub fn diagram_automorphisms(&self) -> Vec<Vec<usize>> {
        diagram::automorphisms(&self.cartan)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::from_str_type(s).unwrap()
    }

    #[test]
    fn positive_root_counts() {
        for (t, n) in [
            ("A1", 1),
            ("A2", 3),
            ("A5", 15),
            ("B3", 9),
            ("C3", 9),
            ("D4", 12),
            ("D6", 30),
            ("G2", 6),
            ("F4", 24),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("A1xA1xA1", 3),
        ] {
            assert_eq!(rs(t).positive_roots().len(), n, "{t}");
        }
    }

    #[test]
    fn dual_coxeter_numbers() {
        for (t, h) in [
            ("A1", 2),
            ("A5", 6),
            ("B3", 5),
            ("C3", 4),
            ("D6", 10),
            ("G2", 4),
            ("F4", 9),
            ("E6", 12),
            ("E7", 18),
            ("E8", 30),
        ] {
            assert_eq!(rs(t).dual_coxeter(), &[h], "{t}");
        }
    }

    #[test]
    fn highest_root_has_norm_two() {
        for t in ["A3", "B4", "C4", "D5", "G2", "F4", "E6", "E7", "E8"] {
            let r = rs(t);
            let hr = r.highest_root().clone();
            assert_eq!(r.inner(&hr, &hr).unwrap(), qi(2), "{t}");
        }
    }

    #[test]
    fn adjoint_weights_in_bourbaki_numbering() {
        assert_eq!(rs("E7").highest_root(), &"1,0,0,0,0,0,0".parse().unwrap());
        assert_eq!(rs("E8").highest_root(), &"0,0,0,0,0,0,0,1".parse().unwrap());
        assert_eq!(rs("E6").highest_root(), &"0,1,0,0,0,0".parse().unwrap());
        assert_eq!(rs("F4").highest_root(), &"1,0,0,0".parse().unwrap());
        assert_eq!(rs("G2").highest_root(), &"0,1".parse().unwrap());
        assert_eq!(rs("C3").highest_root(), &"2,0,0".parse().unwrap());
        assert_eq!(rs("B3").highest_root(), &"0,1,0".parse().unwrap());
    }

    #[test]
    fn small_inner_products() {
        let a1 = rs("A1");
        let w = Weight::new([1]);
        assert_eq!(a1.inner(&w, &w).unwrap(), q(1, 2));
        let a2 = rs("A2");
        let w1 = Weight::new([1, 0]);
        assert_eq!(a2.inner(&w1, &w1).unwrap(), q(2, 3));
        let g2 = rs("G2");
        let a1r = g2.simple_roots()[0].clone();
        assert_eq!(g2.inner(&a1r, &a1r).unwrap(), q(2, 3));
        assert_eq!(a2.inner(&Weight::zero(2), &w1).unwrap(), qi(0));
        assert!(a2.inner(&Weight::zero(3), &w1).is_err());
    }

    #[test]
    fn sum_of_positive_roots_is_two_rho() {
        for t in ["A4", "B3", "C4", "D5", "G2", "F4", "E6", "A2xB2"] {
            let r = rs(t);
            let sum = r
                .positive_roots()
                .iter()
                .fold(Weight::zero(r.rank()), |acc, b| &acc + &b.weight);
            assert_eq!(sum, r.two_rho(), "{t}");
        }
    }

    #[test]
    fn cartan_entries_from_form() {
        for t in ["B3", "C3", "F4", "G2", "E6"] {
            let r = rs(t);
            for i in 0..r.rank() {
                for j in 0..r.rank() {
                    let ai = &r.simple_roots()[i];
                    let aj = &r.simple_roots()[j];
                    let v = qi(2) * r.inner(ai, aj).unwrap() / r.inner(aj, aj).unwrap();
                    assert_eq!(v, qi(r.cartan()[i][j] as i64));
                }
            }
        }
    }

    #[test]
    fn dominant_conjugate_cases() {
        let a1 = rs("A1");
        assert_eq!(a1.dominant_conjugate(&Weight::new([3])), (Weight::new([3]), 1));
        assert_eq!(a1.dominant_conjugate(&Weight::new([-2])), (Weight::new([0]), -1));
        assert_eq!(a1.dominant_conjugate(&Weight::new([-1])).1, 0);
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(rs("A1").weyl_orbit(&Weight::new([0]), 10).unwrap().len(), 1);
        assert_eq!(rs("A2").weyl_orbit(&Weight::new([1, 0]), 10).unwrap().len(), 3);
        assert_eq!(
            rs("D4").weyl_orbit(&Weight::new([1, 0, 0, 0]), 100).unwrap().len(),
            8
        );
        assert!(rs("E8").weyl_orbit(&rs("E8").rho(), 1000).is_err());
    }

    #[test]
    fn parse_types() {
        assert!("E9".parse::<AlgebraType>().is_err());
        assert!("D2".parse::<AlgebraType>().is_err());
        assert!("B1".parse::<AlgebraType>().is_err());
        let t: AlgebraType = "A1^3".parse().unwrap();
        assert_eq!(t.to_string(), "A1xA1xA1");
        assert_eq!("A2xA2".parse::<AlgebraType>().unwrap().rank(), 4);
    }

    #[test]
    fn duals() {
        let e6 = rs("E6");
        assert_eq!(e6.dual(&Weight::new([1, 0, 0, 0, 0, 0])), Weight::new([0, 0, 0, 0, 0, 1]));
        let e7 = rs("E7");
        let w = Weight::new([0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(e7.dual(&w), w);
        let a4 = rs("A4");
        assert_eq!(a4.dual(&Weight::new([1, 2, 0, 0])), Weight::new([0, 0, 2, 1]));
    }
}
