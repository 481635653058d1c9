//! Reachability helpers over the τ-graph of a [`PairUniverse`].

use std::collections::VecDeque;

use crate::composition::PairUniverse;

/// Pairs that reach a `target` pair through pairs accepted by `allowed`
/// (targets included).
pub(crate) fn can_reach(
    u: &PairUniverse,
    target: &[bool],
    allowed: impl Fn(usize) -> bool,
) -> Vec<bool> {
    let mut seen = vec![false; u.len()];
    let mut queue: VecDeque<usize> = (0..u.len()).filter(|&i| target[i] && allowed(i)).collect();
    for &i in &queue {
        seen[i] = true;
    }
    while let Some(i) = queue.pop_front() {
        for &p in u.predecessors(i) {
            if !seen[p] && allowed(p) {
                seen[p] = true;
                queue.push_back(p);
            }
        }
    }
    seen
}

/// Pairs accepted by `allowed` that lie on a cycle of the subgraph induced
/// by `allowed` (iterative Tarjan).
pub(crate) fn on_cycle(u: &PairUniverse, allowed: impl Fn(usize) -> bool) -> Vec<bool> {
    const UNVISITED: usize = usize::MAX;
    let n = u.len();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut result = vec![false; n];
    let mut next = 0;

    for start in 0..n {
        if index[start] != UNVISITED || !allowed(start) {
            continue;
        }
        // (node, position in its successor list)
        let mut frames = vec![(start, 0usize)];
        index[start] = next;
        low[start] = next;
        next += 1;
        stack.push(start);
        on_stack[start] = true;

        while let Some(&mut (v, ref mut pos)) = frames.last_mut() {
            let succ = u.successors(v);
            if *pos < succ.len() {
                let w = succ[*pos];
                *pos += 1;
                if !allowed(w) {
                    continue;
                }
                if index[w] == UNVISITED {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(parent, _)) = frames.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut component = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    component.push(w);
                    if w == v {
                        break;
                    }
                }
                let cyclic = component.len() > 1 || u.successors(v).contains(&v);
                if cyclic {
                    for w in component {
                        result[w] = true;
                    }
                }
            }
        }
    }
    result
}

/// Shortest τ-path from `from` to a pair satisfying `goal`, moving only
/// through pairs accepted by `allowed`. Ties go to the lowest pair index.
pub(crate) fn shortest_path(
    u: &PairUniverse,
    from: usize,
    goal: impl Fn(usize) -> bool,
    allowed: impl Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    if !allowed(from) {
        return None;
    }
    let mut parent = vec![usize::MAX; u.len()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(i) = queue.pop_front() {
        if goal(i) {
            let mut path = vec![i];
            let mut cur = i;
            while cur != from {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &t in u.successors(i) {
            if parent[t] == usize::MAX && allowed(t) {
                parent[t] = i;
                queue.push_back(t);
            }
        }
    }
    None
}
