//! Prefix-maximum Fenwick tree over columns.

/// Point max-update / prefix max-query over `0..size`.
///
/// Every cell starts at 0 and never decreases. Each stored maximum carries
/// an optional tag naming who wrote it; among equal values the smallest tag
/// is kept, so queries are deterministic.
#[derive(Debug, Clone)]
pub struct PrefixMaxIndex {
    // 1-based Fenwick layout; tree[0] is unused.
    tree: Vec<(u64, usize)>,
}

const NO_TAG: usize = usize::MAX;

#[inline]
fn better(a: (u64, usize), b: (u64, usize)) -> bool {
    a.0 > b.0 || (a.0 == b.0 && a.1 < b.1)
}

impl PrefixMaxIndex {
    pub fn new(size: usize) -> Self {
        Self {
            tree: vec![(0, NO_TAG); size + 1],
        }
    }

    pub fn size(&self) -> usize {
        self.tree.len() - 1
    }

    pub fn update(&mut self, col: usize, value: u64) {
        self.update_tagged(col, value, NO_TAG);
    }

    /// Raises position `col` to at least `value`, remembering `tag`.
    pub fn update_tagged(&mut self, col: usize, value: u64, tag: usize) {
        assert!(
            col < self.size(),
            "column {col} out of range 0..{}",
            self.size()
        );
        let entry = (value, tag);
        let mut pos = col + 1;
        while pos < self.tree.len() {
            if better(entry, self.tree[pos]) {
                self.tree[pos] = entry;
            }
            pos += pos & pos.wrapping_neg();
        }
    }

    /// Maximum value written anywhere in `0..=col`, or 0.
    pub fn query(&self, col: usize) -> u64 {
        self.query_tagged(col).0
    }

    /// Maximum in `0..=col` with the tag of its writer, if any.
    pub fn query_tagged(&self, col: usize) -> (u64, Option<usize>) {
        assert!(
            col < self.size(),
            "column {col} out of range 0..{}",
            self.size()
        );
        let mut best = (0, NO_TAG);
        let mut pos = col + 1;
        while pos > 0 {
            if better(self.tree[pos], best) {
                best = self.tree[pos];
            }
            pos &= pos - 1;
        }
        (best.0, (best.1 != NO_TAG).then_some(best.1))
    }
}
