/// Complete binary tree of partial sums over non-negative weights.
///
/// Parents are always recomputed from their two children, so the root is
/// exactly the tree-ordered sum of the leaves and no round-off accumulates
/// across updates.
#[derive(Debug, Clone)]
pub struct SumTree {
    len: usize,
    cap: usize,
    nodes: Vec<f64>,
}

impl SumTree {
    pub fn new(len: usize) -> Self {
        let cap = len.max(1).next_power_of_two();
        Self { len, cap, nodes: vec![0.0; 2 * cap] }
    }

    pub fn from_weights(weights: &[f64]) -> Self {
        let mut t = Self::new(weights.len());
        t.nodes[t.cap..t.cap + weights.len()].copy_from_slice(weights);
        for i in (1..t.cap).rev() {
            t.nodes[i] = t.nodes[2 * i] + t.nodes[2 * i + 1];
        }
        t
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn total(&self) -> f64 {
        self.nodes[1]
    }

    pub fn get(&self, i: usize) -> f64 {
        self.nodes[self.cap + i]
    }

    pub fn set(&mut self, i: usize, w: f64) {
        debug_assert!(i < self.len && w >= 0.0);
        let mut k = self.cap + i;
        if self.nodes[k] == w {
            return;
        }
        self.nodes[k] = w;
        while k > 1 {
            k /= 2;
            self.nodes[k] = self.nodes[2 * k] + self.nodes[2 * k + 1];
        }
    }

    /// Index `i` with probability `w_i / total` for `target = u * total`,
    /// `u` uniform on `[0, 1)`. Never returns a zero-weight leaf while the
    /// total is positive.
    pub fn find(&self, mut target: f64) -> usize {
        let mut k = 1;
        while k < self.cap {
            let left = self.nodes[2 * k];
            let right = self.nodes[2 * k + 1];
            if target < left || right == 0.0 {
                k *= 2;
            } else {
                target -= left;
                k = 2 * k + 1;
            }
        }
        k - self.cap
    }
}
