//! Dynkin diagrams as Cartan matrices: induced-subdiagram embeddings,
//! automorphisms and type recognition.

use crate::rootsys::{Family, SimpleType};

pub type Cartan = Vec<Vec<i32>>;

pub fn submatrix(cartan: &[Vec<i32>], nodes: &[usize]) -> Cartan {
    nodes
        .iter()
        .map(|&i| nodes.iter().map(|&j| cartan[i][j]).collect())
        .collect()
}

pub fn neighbors(cartan: &[Vec<i32>], i: usize) -> Vec<usize> {
    (0..cartan.len())
        .filter(|&j| j != i && cartan[i][j] != 0)
        .collect()
}

/// Connected components of the subdiagram induced on `nodes`, each sorted.
pub fn components(cartan: &[Vec<i32>], nodes: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; cartan.len()];
    let inside: Vec<bool> = (0..cartan.len()).map(|i| nodes.contains(&i)).collect();
    let mut out = Vec::new();
    for &start in nodes {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in neighbors(cartan, i) {
                if inside[j] && !seen[j] {
                    seen[j] = true;
                    comp.push(j);
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn is_connected(cartan: &[Vec<i32>], nodes: &[usize]) -> bool {
    !nodes.is_empty() && components(cartan, nodes).len() == 1
}

/// All injective maps `f` from pattern nodes into target nodes such that the
/// Cartan entries agree on every ordered pair, i.e. induced embeddings that
/// respect bond multiplicities and arrow directions.
pub fn induced_embeddings(pattern: &[Vec<i32>], target: &[Vec<i32>]) -> Vec<Vec<usize>> {
    let k = pattern.len();
    let mut out = Vec::new();
    if k > target.len() {
        return out;
    }
    let order = bfs_order(pattern);
    let mut map = vec![usize::MAX; k];
    let mut used = vec![false; target.len()];
    extend(pattern, target, &order, 0, &mut map, &mut used, &mut out);
    out
}

fn bfs_order(cartan: &[Vec<i32>]) -> Vec<usize> {
    let n = cartan.len();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = std::collections::VecDeque::from([s]);
        while let Some(i) = q.pop_front() {
            order.push(i);
            for j in neighbors(cartan, i) {
                if !seen[j] {
                    seen[j] = true;
                    q.push_back(j);
                }
            }
        }
    }
    order
}

fn extend(
    pattern: &[Vec<i32>],
    target: &[Vec<i32>],
    order: &[usize],
    depth: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
) {
    if depth == order.len() {
        out.push(map.clone());
        return;
    }
    let p = order[depth];
    for t in 0..target.len() {
        if used[t] || target[t][t] != pattern[p][p] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&q| {
            let tq = map[q];
            target[t][tq] == pattern[p][q] && target[tq][t] == pattern[q][p]
        });
        if !consistent {
            continue;
        }
        map[p] = t;
        used[t] = true;
        extend(pattern, target, order, depth + 1, map, used, out);
        used[t] = false;
        map[p] = usize::MAX;
    }
}

/// Diagram automorphisms as node permutations (`perm[i]` is the image of `i`).
pub fn automorphisms(cartan: &[Vec<i32>]) -> Vec<Vec<usize>> {
    let mut autos = induced_embeddings(cartan, cartan);
    autos.sort();
    autos
}

/// Recognizes a connected Cartan matrix as a simple type (B2 and C2, A3 and
/// D3 coincide; the first family in A..G order wins).
pub fn recognize(cartan: &[Vec<i32>]) -> Option<SimpleType> {
    let n = cartan.len();
    if n == 0 || !is_connected(cartan, &(0..n).collect::<Vec<_>>()) {
        return None;
    }
    Family::ALL.iter().find_map(|&family| {
        let t = SimpleType::new(family, n).ok()?;
        let pat = t.cartan();
        (!induced_embeddings(&pat, cartan).is_empty()).then_some(t)
    })
}
