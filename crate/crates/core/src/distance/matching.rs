//! Hopcroft–Karp maximum bipartite matching.

use std::collections::VecDeque;

const NIL: usize = usize::MAX;

/// Size of a maximum matching between `adjacency.len()` left vertices and
/// `right_count` right vertices.
pub(crate) fn maximum_matching(adjacency: &[Vec<usize>], right_count: usize) -> usize {
    let left_count = adjacency.len();
    let mut match_left = vec![NIL; left_count];
    let mut match_right = vec![NIL; right_count];
    let mut layer = vec![0usize; left_count];
    let mut matched = 0;

    loop {
        // BFS from free left vertices builds the layered graph.
        let mut queue = VecDeque::new();
        for u in 0..left_count {
            if match_left[u] == NIL {
                layer[u] = 0;
                queue.push_back(u);
            } else {
                layer[u] = usize::MAX;
            }
        }
        let mut found_free = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adjacency[u] {
                let w = match_right[v];
                if w == NIL {
                    found_free = true;
                } else if layer[w] == usize::MAX {
                    layer[w] = layer[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found_free {
            return matched;
        }

        let mut next_edge = vec![0usize; left_count];
        for u in 0..left_count {
            if match_left[u] == NIL
                && augment(u, adjacency, &mut match_left, &mut match_right, &mut layer, &mut next_edge)
            {
                matched += 1;
            }
        }
    }
}

/// Iterative DFS along the layered graph; flips the path when it reaches a free right vertex.
fn augment(
    root: usize,
    adjacency: &[Vec<usize>],
    match_left: &mut [usize],
    match_right: &mut [usize],
    layer: &mut [usize],
    next_edge: &mut [usize],
) -> bool {
    let mut stack = vec![root];
    while let Some(&u) = stack.last() {
        if next_edge[u] == adjacency[u].len() {
            layer[u] = usize::MAX;
            stack.pop();
            continue;
        }
        let v = adjacency[u][next_edge[u]];
        next_edge[u] += 1;
        let w = match_right[v];
        if w == NIL {
            // Flip the alternating path recorded on the stack.
            let mut right = v;
            while let Some(left) = stack.pop() {
                let previous = match_left[left];
                match_left[left] = right;
                match_right[right] = left;
                right = previous;
            }
            return true;
        }
        if layer[w] == layer[u] + 1 {
            stack.push(w);
        }
    }
    false
}
