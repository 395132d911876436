//! Assignments of `m` maximal points to `k` unordered blocks, as restricted
//! growth strings: `a[0] = 0` and `a[i] ≤ 1 + max(a[..i])`, using exactly the
//! values `0..k`.

/// Number of surjective completions of an RGS prefix, for fixed length and
/// block count: `table[r][u]` counts completions of a prefix of length `r`
/// using `u` distinct values.
#[derive(Debug, Clone)]
pub struct Completions {
    len: usize,
    blocks: usize,
    table: Vec<Vec<u128>>,
}

impl Completions {
    /// `None` when the total overflows `u128`. Entries for states no valid
    /// prefix reaches may saturate; every reachable count is at most the
    /// total and so stays exact.
    pub fn new(len: usize, blocks: usize) -> Option<Self> {
        let mut table = vec![vec![0u128; blocks + 2]; len + 1];
        table[len][blocks] = 1;
        for r in (0..len).rev() {
            for u in 0..=blocks {
                let stay = (u as u128).saturating_mul(table[r + 1][u]);
                let open = if u < blocks { table[r + 1][u + 1] } else { 0 };
                table[r][u] = stay.saturating_add(open);
            }
        }
        (table[0][0] < u128::MAX).then_some(Self { len, blocks, table })
    }

    /// Completions of a prefix of length `prefix_len` using `used` values.
    pub fn count(&self, prefix_len: usize, used: usize) -> u128 {
        if prefix_len > self.len || used > self.blocks {
            return 0;
        }
        self.table[prefix_len][used]
    }

    /// All assignments: the Stirling number `S(len, blocks)`.
    pub fn total(&self) -> u128 {
        self.count(0, 0)
    }
}

/// Stirling number of the second kind, `None` on overflow.
pub fn stirling2(n: usize, k: usize) -> Option<u128> {
    Completions::new(n, k).map(|c| c.total())
}

/// Streams every restricted growth string of length `len` with exactly
/// `blocks` distinct values, in lexicographic order.
pub fn enumerate_block_assignments(len: usize, blocks: usize) -> BlockAssignments {
    BlockAssignments {
        len,
        blocks,
        current: None,
        done: blocks == 0 || blocks > len,
    }
}

#[derive(Debug, Clone)]
pub struct BlockAssignments {
    len: usize,
    blocks: usize,
    current: Option<Vec<usize>>,
    done: bool,
}

impl BlockAssignments {
    /// Smallest valid completion of `a[..from]`, whose largest value is
    /// `used - 1`.
    fn fill(&self, a: &mut [usize], from: usize, mut used: usize) {
        for i in from..self.len {
            let remaining = self.len - i;
            a[i] = if remaining > self.blocks - used {
                0
            } else {
                used += 1;
                used - 1
            };
        }
    }
}

impl Iterator for BlockAssignments {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let Some(mut a) = self.current.take() else {
            let mut a = vec![0; self.len];
            self.fill(&mut a, 1, 1);
            self.current = Some(a.clone());
            return Some(a);
        };
        // Rightmost position that can be incremented and still completed.
        let mut prefix_max = vec![0usize; self.len];
        for i in 1..self.len {
            prefix_max[i] = prefix_max[i - 1].max(a[i - 1]);
        }
        for i in (1..self.len).rev() {
            let cap = (prefix_max[i] + 1).min(self.blocks - 1);
            if a[i] < cap {
                a[i] += 1;
                let used = prefix_max[i].max(a[i]) + 1;
                if self.len - i > self.blocks - used {
                    self.fill(&mut a, i + 1, used);
                    self.current = Some(a.clone());
                    return Some(a);
                }
            }
        }
        self.done = true;
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn brute(len: usize, blocks: usize) -> Vec<Vec<usize>> {
        // Canonical form of every function len → blocks that is onto.
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let total = blocks.pow(len as u32);
        for mut code in 0..total {
            let mut f = vec![0; len];
            for v in f.iter_mut() {
                *v = code % blocks;
                code /= blocks;
            }
            let mut relabel = vec![usize::MAX; blocks];
            let mut next = 0;
            let canon: Vec<usize> = f
                .iter()
                .map(|&v| {
                    if relabel[v] == usize::MAX {
                        relabel[v] = next;
                        next += 1;
                    }
                    relabel[v]
                })
                .collect();
            if next == blocks && seen.insert(canon.clone()) {
                out.push(canon);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(4, 2), Some(7));
        assert_eq!(stirling2(9, 2), Some(255));
        assert_eq!(stirling2(16, 3), Some(7_141_686));
        assert_eq!(stirling2(5, 5), Some(1));
        assert_eq!(stirling2(3, 4), Some(0));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for len in 1..=6 {
            for blocks in 1..=len {
                let got: Vec<_> = enumerate_block_assignments(len, blocks).collect();
                assert_eq!(got, brute(len, blocks), "len {len} blocks {blocks}");
                assert_eq!(got.len() as u128, stirling2(len, blocks).unwrap());
            }
        }
        assert_eq!(enumerate_block_assignments(9, 2).count(), 255);
        assert_eq!(
            enumerate_block_assignments(3, 1).collect::<Vec<_>>(),
            vec![vec![0, 0, 0]]
        );
        assert_eq!(enumerate_block_assignments(2, 3).count(), 0);
    }

    #[test]
    fn completion_counts_partition_the_total() {
        let c = Completions::new(7, 3).unwrap();
        // Prefixes [0,0] [0,1] partition everything.
        assert_eq!(c.count(2, 1) + c.count(2, 2), c.total());
        assert_eq!(c.count(7, 3), 1);
        assert_eq!(c.count(7, 2), 0);
    }
}
