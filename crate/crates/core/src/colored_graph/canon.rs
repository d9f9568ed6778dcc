//! Exact canonical labeling of edge-colored graphs modulo vertex and color
//! renaming.
//!
//! A labeling is a vertex order. Its code is the upper triangle of the
//! permuted color matrix read column by column (`(0,1), (0,2), (1,2), (0,3), ...`),
//! where `0` means "no edge" and colors are renamed `1, 2, ...` by first
//! appearance. The canonical code is the lexicographically smallest code over
//! all orders that respect an ordered partition refined from
//! relabeling-invariant vertex data. Each column is fixed once its vertex is
//! placed, so partial codes already worse than the incumbent are cut.

pub(crate) const NO_EDGE: u16 = u16::MAX;

use super::CanonicalKey;

struct Canonizer<'a> {
    n: usize,
    matrix: &'a [u16],
    class_size: Vec<u64>,
    degree: Vec<u64>,
    best: Option<Vec<u16>>,
    best_order: Vec<usize>,
}

/// Returns the canonical key and the vertex order producing it
/// (`order[i]` is the vertex placed at position `i`).
pub(crate) fn canonical_order(n: usize, matrix: &[u16]) -> (CanonicalKey, Vec<usize>) {
    debug_assert_eq!(matrix.len(), n * n);
    let colors = matrix
        .iter()
        .filter(|&&c| c != NO_EDGE)
        .map(|&c| c as usize + 1)
        .max()
        .unwrap_or(0);
    let mut class_size = vec![0u64; colors];
    let mut degree = vec![0u64; n];
    for u in 0..n {
        for v in 0..n {
            let c = matrix[u * n + v];
            if c != NO_EDGE {
                degree[u] += 1;
                if u < v {
                    class_size[c as usize] += 1;
                }
            }
        }
    }

    let mut canon = Canonizer {
        n,
        matrix,
        class_size,
        degree,
        best: None,
        best_order: Vec::new(),
    };
    let mut state = Partial {
        order: Vec::with_capacity(n),
        placed: vec![false; n],
        code: vec![n as u16],
        label: vec![0; colors],
        next_label: 1,
    };
    canon.search(&mut state);
    let code = canon.best.expect("at least one leaf is always reached");
    (CanonicalKey(code), canon.best_order)
}

struct Partial {
    order: Vec<usize>,
    placed: Vec<bool>,
    code: Vec<u16>,
    // color -> label in the code, 0 while unseen
    label: Vec<u16>,
    next_label: u16,
}

impl Canonizer<'_> {
    fn color(&self, u: usize, v: usize) -> Option<usize> {
        let c = self.matrix[u * self.n + v];
        (c != NO_EDGE).then_some(c as usize)
    }

    fn search(&mut self, st: &mut Partial) {
        if st.order.len() == self.n {
            let better = match &self.best {
                None => true,
                Some(b) => st.code < *b,
            };
            if better {
                self.best = Some(st.code.clone());
                self.best_order = st.order.clone();
            }
            return;
        }

        for v in self.first_cell(st) {
            let code_len = st.code.len();
            let mut fresh = Vec::new();
            for i in 0..st.order.len() {
                let entry = match self.color(st.order[i], v) {
                    None => 0,
                    Some(c) => {
                        if st.label[c] == 0 {
                            st.label[c] = st.next_label;
                            st.next_label += 1;
                            fresh.push(c);
                        }
                        st.label[c]
                    }
                };
                st.code.push(entry);
            }

            let worse = match &self.best {
                Some(b) => st.code.as_slice() > &b[..st.code.len()],
                None => false,
            };
            if !worse {
                st.order.push(v);
                st.placed[v] = true;
                self.search(st);
                st.placed[v] = false;
                st.order.pop();
            }

            st.code.truncate(code_len);
            for c in fresh {
                st.label[c] = 0;
                st.next_label -= 1;
            }
        }
    }

    /// Vertices in the smallest cell of the refined partition of unplaced
    /// vertices.
    fn first_cell(&self, st: &Partial) -> Vec<usize> {
        let free: Vec<usize> = (0..self.n).filter(|&v| !st.placed[v]).collect();
        if free.len() <= 1 {
            return free;
        }

        // Edge descriptor: (label already assigned in the code, class size).
        let describe = |c: usize| (st.label[c] as u64, self.class_size[c]);

        let mut signatures: Vec<Vec<u64>> = free
            .iter()
            .map(|&v| {
                let mut sig = vec![self.degree[v]];
                for &p in &st.order {
                    match self.color(p, v) {
                        None => sig.extend([0, 0]),
                        Some(c) => {
                            let (l, s) = describe(c);
                            sig.extend([l + 1, s]);
                        }
                    }
                }
                let mut incident: Vec<(u64, u64)> = (0..self.n)
                    .filter_map(|w| self.color(v, w).map(describe))
                    .collect();
                incident.sort_unstable();
                sig.extend(incident.into_iter().flat_map(|(a, b)| [a, b]));
                sig
            })
            .collect();
        let mut rank = ranks(&signatures);
        let mut cells = distinct(&rank);

        let index_of = |v: usize| free.binary_search(&v).ok();
        loop {
            signatures = free
                .iter()
                .enumerate()
                .map(|(i, &v)| {
                    let mut nb: Vec<(u64, u64, u64)> = (0..self.n)
                        .filter_map(|w| {
                            let c = self.color(v, w)?;
                            let j = index_of(w)?;
                            let (l, s) = describe(c);
                            Some((rank[j], l, s))
                        })
                        .collect();
                    nb.sort_unstable();
                    let mut sig = vec![rank[i]];
                    sig.extend(nb.into_iter().flat_map(|(a, b, c)| [a, b, c]));
                    sig
                })
                .collect();
            let next = ranks(&signatures);
            let next_cells = distinct(&next);
            rank = next;
            if next_cells == cells || next_cells == free.len() {
                break;
            }
            cells = next_cells;
        }

        free.iter()
            .zip(&rank)
            .filter(|(_, &r)| r == 0)
            .map(|(&v, _)| v)
            .collect()
    }
}

/// Dense ranks of signatures under their natural order.
fn ranks(signatures: &[Vec<u64>]) -> Vec<u64> {
    let mut sorted: Vec<&Vec<u64>> = signatures.iter().collect();
    sorted.sort_unstable();
    sorted.dedup();
    signatures
        .iter()
        .map(|s| sorted.binary_search(&s).expect("present") as u64)
        .collect()
}

fn distinct(rank: &[u64]) -> usize {
    rank.iter().copied().max().map_or(0, |m| m as usize + 1)
}
