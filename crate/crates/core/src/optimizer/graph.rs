use std::collections::BTreeMap;

/// Orderings tried when breaking ties among vertices that color refinement
/// cannot separate. Past this the key is still sound but may miss some
/// isomorphic pairs.
pub const TIE_BREAK_LIMIT: usize = 5040;

/// An isomorphism-invariant encoding of a small weighted graph.
///
/// Equal keys always describe isomorphic graphs. Isomorphic graphs get equal
/// keys unless tie breaking exceeded [`TIE_BREAK_LIMIT`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphKey(Vec<u64>);

impl GraphKey {
    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }
}

impl std::fmt::Display for GraphKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", s.join(" "))
    }
}

/// Canonical key of the graph with vertex colors `colors` and edge weights
/// `weights[u][v]` (directed; pass a symmetric matrix for undirected graphs).
pub fn canonical_key(colors: &[u64], weights: &[Vec<u64>]) -> GraphKey {
    let n = colors.len();
    assert!(weights.len() == n && weights.iter().all(|r| r.len() == n), "weight matrix must be square");
    let classes = refine(colors, weights);
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in classes.iter().enumerate() {
        groups.entry(c).or_default().push(v);
    }
    let groups: Vec<Vec<usize>> = groups.into_values().collect();
    let orderings: usize = groups
        .iter()
        .map(|g| (1..=g.len()).product::<usize>())
        .try_fold(1usize, |acc, k| acc.checked_mul(k))
        .unwrap_or(usize::MAX);
    let base: Vec<usize> = groups.iter().flatten().copied().collect();
    if orderings > TIE_BREAK_LIMIT {
        return GraphKey(encode(colors, weights, &base));
    }
    let mut best: Option<Vec<u64>> = None;
    let mut order = base;
    let offsets: Vec<usize> = groups
        .iter()
        .scan(0, |acc, g| {
            let o = *acc;
            *acc += g.len();
            Some(o)
        })
        .collect();
    search(&groups, &offsets, 0, &mut order, &mut |ord| {
        let code = encode(colors, weights, ord);
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
    });
    GraphKey(best.unwrap_or_default())
}

fn search(groups: &[Vec<usize>], offsets: &[usize], k: usize, order: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if k == groups.len() {
        f(order);
        return;
    }
    let (lo, hi) = (offsets[k], offsets[k] + groups[k].len());
    permute(order, lo, hi, &mut |ord| search(groups, offsets, k + 1, ord, f));
}

fn permute(v: &mut Vec<usize>, k: usize, hi: usize, f: &mut dyn FnMut(&mut Vec<usize>)) {
    if k == hi {
        f(v);
        return;
    }
    for i in k..hi {
        v.swap(k, i);
        permute(v, k + 1, hi, f);
        v.swap(k, i);
    }
}

fn encode(colors: &[u64], weights: &[Vec<u64>], order: &[usize]) -> Vec<u64> {
    let mut code = Vec::with_capacity(1 + order.len() * (order.len() + 1));
    code.push(order.len() as u64);
    code.extend(order.iter().map(|&v| colors[v]));
    for &u in order {
        code.extend(order.iter().map(|&v| weights[u][v]));
    }
    code
}

/// Color refinement: class ids are ranks of label-free signatures, so they
/// do not depend on the vertex numbering.
fn refine(colors: &[u64], weights: &[Vec<u64>]) -> Vec<usize> {
    let n = colors.len();
    let mut class = rank(&colors.iter().map(|&c| vec![c]).collect::<Vec<_>>());
    loop {
        let sigs: Vec<Vec<u64>> = (0..n)
            .map(|v| {
                let mut nbrs: Vec<[u64; 3]> = (0..n)
                    .filter(|&u| u != v && (weights[v][u] != 0 || weights[u][v] != 0))
                    .map(|u| [class[u] as u64, weights[v][u], weights[u][v]])
                    .collect();
                nbrs.sort_unstable();
                let mut s = vec![class[v] as u64, weights[v][v]];
                s.extend(nbrs.into_iter().flatten());
                s
            })
            .collect();
        let next = rank(&sigs);
        let count = |c: &[usize]| c.iter().collect::<std::collections::HashSet<_>>().len();
        if count(&next) == count(&class) {
            return next;
        }
        class = next;
    }
}

fn rank(sigs: &[Vec<u64>]) -> Vec<usize> {
    let mut distinct: Vec<&Vec<u64>> = sigs.iter().collect();
    distinct.sort();
    distinct.dedup();
    sigs.iter().map(|s| distinct.binary_search(&s).unwrap()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabeling_invariance() {
        // a directed triangle with one doubled edge, under two numberings
        let a = vec![vec![0, 2, 0], vec![0, 0, 1], vec![1, 0, 0]];
        let b = vec![vec![0, 1, 0], vec![0, 0, 2], vec![1, 0, 0]];
        assert_eq!(canonical_key(&[0; 3], &a), canonical_key(&[0; 3], &b));
        let c = vec![vec![0, 2, 0], vec![1, 0, 0], vec![0, 0, 1]];
        assert_ne!(canonical_key(&[0; 3], &a), canonical_key(&[0; 3], &c));
    }

    #[test]
    fn colors_matter() {
        let w = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(canonical_key(&[1, 2], &w), canonical_key(&[2, 1], &w));
        assert_ne!(canonical_key(&[1, 1], &w), canonical_key(&[1, 2], &w));
    }
}
