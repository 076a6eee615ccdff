use crate::error::{Error, Result};

/// Default upper bound on the total number of simulated qubits.
pub const DEFAULT_MAX_QUBITS: usize = 26;

/// Partition of the qubits into the ancilla, I, J, Thre and Mean registers.
///
/// Qubit `q` is bit `q` of the basis index. The I register occupies the
/// lowest `m` bits, followed by J (`p` bits), Thre (`b` bits), Mean
/// (`a` bits) and finally the ancilla.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegisterLayout {
    pub m: usize,
    pub a: usize,
    pub p: usize,
    pub b: usize,
    pub has_ancilla: bool,
}

/// Register values of one computational basis state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BasisIndex {
    pub ancilla: usize,
    pub i: usize,
    pub mean: usize,
    pub j: usize,
    pub thre: usize,
}

impl RegisterLayout {
    pub fn new(m: usize, a: usize, p: usize, b: usize) -> Result<Self> {
        Self::with_max_qubits(m, a, p, b, true, DEFAULT_MAX_QUBITS)
    }

    pub fn with_max_qubits(
        m: usize,
        a: usize,
        p: usize,
        b: usize,
        has_ancilla: bool,
        max_qubits: usize,
    ) -> Result<Self> {
        if m < 1 || a < 1 || b < 1 {
            return Err(Error::Input(format!(
                "register sizes must satisfy m >= 1, a >= 1, b >= 1 (got m={m}, a={a}, b={b})"
            )));
        }
        let layout = RegisterLayout { m, a, p, b, has_ancilla };
        let total = layout.total_qubits();
        if total > max_qubits {
            return Err(Error::Capacity(format!(
                "layout needs {total} qubits, limit is {max_qubits}"
            )));
        }
        Ok(layout)
    }

    pub fn total_qubits(&self) -> usize {
        self.m + self.a + self.p + self.b + usize::from(self.has_ancilla)
    }

    pub fn dim(&self) -> usize {
        1usize << self.total_qubits()
    }

    /// Window length M = 2^m.
    pub fn segment_len(&self) -> usize {
        1 << self.m
    }

    /// Number of windows P = 2^p.
    pub fn segments(&self) -> usize {
        1 << self.p
    }

    pub fn i_offset(&self) -> usize {
        0
    }
    pub fn j_offset(&self) -> usize {
        self.m
    }
    pub fn thre_offset(&self) -> usize {
        self.m + self.p
    }
    pub fn mean_offset(&self) -> usize {
        self.m + self.p + self.b
    }

    /// Index of the ancilla qubit, if present.
    pub fn ancilla_qubit(&self) -> Option<usize> {
        self.has_ancilla.then_some(self.m + self.p + self.b + self.a)
    }

    pub fn i_qubits(&self) -> Vec<usize> {
        (self.i_offset()..self.i_offset() + self.m).collect()
    }
    pub fn j_qubits(&self) -> Vec<usize> {
        (self.j_offset()..self.j_offset() + self.p).collect()
    }
    pub fn thre_qubits(&self) -> Vec<usize> {
        (self.thre_offset()..self.thre_offset() + self.b).collect()
    }
    pub fn mean_qubits(&self) -> Vec<usize> {
        (self.mean_offset()..self.mean_offset() + self.a).collect()
    }

    #[inline]
    pub fn i_of(&self, idx: usize) -> usize {
        idx & ((1 << self.m) - 1)
    }
    #[inline]
    pub fn j_of(&self, idx: usize) -> usize {
        (idx >> self.j_offset()) & ((1 << self.p) - 1)
    }
    #[inline]
    pub fn thre_of(&self, idx: usize) -> usize {
        (idx >> self.thre_offset()) & ((1 << self.b) - 1)
    }
    #[inline]
    pub fn mean_of(&self, idx: usize) -> usize {
        (idx >> self.mean_offset()) & ((1 << self.a) - 1)
    }
    #[inline]
    pub fn ancilla_of(&self, idx: usize) -> usize {
        match self.ancilla_qubit() {
            Some(q) => (idx >> q) & 1,
            None => 0,
        }
    }

    /// Basis index of the given register values.
    pub fn compose(&self, v: BasisIndex) -> Result<usize> {
        let fits = |val: usize, bits: usize| bits >= usize::BITS as usize || val < (1 << bits);
        if !fits(v.i, self.m)
            || !fits(v.j, self.p)
            || !fits(v.thre, self.b)
            || !fits(v.mean, self.a)
            || v.ancilla > usize::from(self.has_ancilla)
        {
            return Err(Error::Index(format!("register value out of range: {v:?}")));
        }
        let mut idx = v.i | (v.j << self.j_offset()) | (v.thre << self.thre_offset());
        idx |= v.mean << self.mean_offset();
        if let Some(q) = self.ancilla_qubit() {
            idx |= v.ancilla << q;
        }
        Ok(idx)
    }

    pub fn decompose(&self, idx: usize) -> BasisIndex {
        BasisIndex {
            ancilla: self.ancilla_of(idx),
            i: self.i_of(idx),
            mean: self.mean_of(idx),
            j: self.j_of(idx),
            thre: self.thre_of(idx),
        }
    }
}
