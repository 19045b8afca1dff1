//! Binary max-heap of variables keyed by activity, ties to the lower index.

const ABSENT: usize = usize::MAX;

#[derive(Debug, Default, Clone)]
pub(crate) struct VarHeap {
    heap: Vec<u32>,
    pos: Vec<usize>,
}

#[inline]
fn before(act: &[f64], a: u32, b: u32) -> bool {
    let (x, y) = (act[a as usize], act[b as usize]);
    x > y || (x == y && a < b)
}

impl VarHeap {
    pub fn grow(&mut self, n: usize) {
        if self.pos.len() < n {
            self.pos.resize(n, ABSENT);
        }
    }

    pub fn contains(&self, v: u32) -> bool {
        self.pos.get(v as usize).is_some_and(|&p| p != ABSENT)
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.heap[i]
    }

    pub fn insert(&mut self, v: u32, act: &[f64]) {
        self.grow(v as usize + 1);
        if self.contains(v) {
            return;
        }
        self.pos[v as usize] = self.heap.len();
        self.heap.push(v);
        self.sift_up(self.heap.len() - 1, act);
    }

    /// Restores order after `v`'s activity increased.
    pub fn increased(&mut self, v: u32, act: &[f64]) {
        if self.contains(v) {
            self.sift_up(self.pos[v as usize], act);
        }
    }

    pub fn pop(&mut self, act: &[f64]) -> Option<u32> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().expect("non-empty");
        self.pos[top as usize] = ABSENT;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.pos[last as usize] = 0;
            self.sift_down(0, act);
        }
        Some(top)
    }

    /// Rebuilds from scratch, e.g. after activities were rescaled.
    pub fn rebuild(&mut self, act: &[f64]) {
        let vars = std::mem::take(&mut self.heap);
        for &v in &vars {
            self.pos[v as usize] = ABSENT;
        }
        for v in vars {
            self.insert(v, act);
        }
    }

    fn sift_up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            let p = self.heap[parent];
            if !before(act, v, p) {
                break;
            }
            self.heap[i] = p;
            self.pos[p as usize] = i;
            i = parent;
        }
        self.heap[i] = v;
        self.pos[v as usize] = i;
    }

    fn sift_down(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        let n = self.heap.len();
        loop {
            let l = 2 * i + 1;
            if l >= n {
                break;
            }
            let r = l + 1;
            let child = if r < n && before(act, self.heap[r], self.heap[l]) { r } else { l };
            if !before(act, self.heap[child], v) {
                break;
            }
            let c = self.heap[child];
            self.heap[i] = c;
            self.pos[c as usize] = i;
            i = child;
        }
        self.heap[i] = v;
        self.pos[v as usize] = i;
    }
}
