use std::collections::HashMap;

/// Occupation-number basis of `Sym^n(C^q)`, in lexicographic order.
#[derive(Debug, Clone)]
pub struct SymBasis {
    q: usize,
    n: usize,
    states: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl SymBasis {
    pub fn new(q: usize, n: usize) -> Self {
        let mut states = Vec::new();
        let mut current = vec![0u32; q];
        fill(&mut current, 0, n as u32, &mut states);
        let index = states.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        Self { q, n, states, index }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[Vec<u32>] {
        &self.states
    }

    pub fn index_of(&self, occupation: &[u32]) -> Option<usize> {
        self.index.get(occupation).copied()
    }
}

fn fill(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Vec<u32>>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(current.clone());
        return;
    }
    for k in 0..=remaining {
        current[pos] = k;
        fill(current, pos + 1, remaining - k, out);
    }
}
