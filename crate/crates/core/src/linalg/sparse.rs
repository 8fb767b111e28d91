//! Sparse vectors: sorted `(index, nonzero)` pairs.

use super::scalar::{Field, Scalar};

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SVec {
    entries: Vec<(usize, Scalar)>,
}

/// Compact `{index: value, ...}`; counterexample notes embed this form.
impl std::fmt::Debug for SVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.entries.iter().map(|(i, c)| (i, Plain(c)))).finish()
    }
}

struct Plain<'a>(&'a Scalar);

impl std::fmt::Debug for Plain<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl SVec {
    pub fn new() -> Self {
        SVec { entries: Vec::new() }
    }

    pub fn unit(i: usize, one: Scalar) -> Self {
        SVec { entries: vec![(i, one)] }
    }

    /// Sorts, merges duplicate indices and drops zeros.
    pub fn from_terms(mut terms: Vec<(usize, Scalar)>) -> Self {
        if terms.len() <= 1 {
            terms.retain(|(_, c)| !c.is_zero());
            return SVec { entries: terms };
        }
        terms.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(usize, Scalar)> = Vec::with_capacity(terms.len());
        for (i, c) in terms {
            match out.last_mut() {
                Some((j, d)) if *j == i => d.add_assign_ref(&c),
                _ => out.push((i, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        SVec { entries: out }
    }

    pub fn from_dense(v: &[Scalar]) -> Self {
        SVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, field: Field, n: usize) -> Vec<Scalar> {
        let mut v = vec![field.zero(); n];
        for (i, c) in &self.entries {
            v[*i] = c.clone();
        }
        v
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Scalar)> {
        self.entries.iter()
    }

    pub fn into_entries(self) -> Vec<(usize, Scalar)> {
        self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    /// Lowest index with a nonzero entry.
    pub fn leading(&self) -> Option<&(usize, Scalar)> {
        self.entries.first()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &Scalar) -> SVec {
        if c.is_zero() {
            return SVec::new();
        }
        SVec {
            entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    pub fn neg(&self) -> SVec {
        SVec {
            entries: self.entries.iter().map(|(i, x)| (*i, -x)).collect(),
        }
    }

    /// `self + c * o`.
    pub fn axpy(&self, c: &Scalar, o: &SVec) -> SVec {
        if c.is_zero() || o.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + o.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), o.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c * y));
                        b.next();
                    } else {
                        let mut s = x.clone();
                        s.add_mul(c, y);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SVec { entries: out }
    }

    pub fn add(&self, o: &SVec) -> SVec {
        match self.entries.first() {
            Some((_, c)) => self.axpy(&c.field().one(), o),
            None => o.clone(),
        }
    }

    pub fn sub(&self, o: &SVec) -> SVec {
        match (self.entries.first(), o.entries.first()) {
            (Some((_, c)), _) | (None, Some((_, c))) => self.axpy(&c.field().int(-1), o),
            (None, None) => SVec::new(),
        }
    }

    /// Keeps only indices in `lo..hi`, shifted down by `lo`.
    pub fn window(&self, lo: usize, hi: usize) -> SVec {
        SVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| *i >= lo && *i < hi)
                .map(|(i, c)| (*i - lo, c.clone()))
                .collect(),
        }
    }

    pub fn shift(&self, by: usize) -> SVec {
        SVec {
            entries: self.entries.iter().map(|(i, c)| (*i + by, c.clone())).collect(),
        }
    }

    pub fn dot_dense(&self, v: &[Scalar]) -> Option<Scalar> {
        let mut it = self.entries.iter();
        let first = it.next()?;
        let mut s = &first.1 * &v[first.0];
        for (i, c) in it {
            s.add_mul(c, &v[*i]);
        }
        Some(s)
    }
}

/// Accumulates scaled sparse vectors into one.
#[derive(Default)]
pub struct SAcc {
    terms: Vec<(usize, Scalar)>,
}

impl SAcc {
    pub fn new() -> Self {
        SAcc { terms: Vec::new() }
    }

    pub fn push(&mut self, i: usize, c: Scalar) {
        if !c.is_zero() {
            self.terms.push((i, c));
        }
    }

    pub fn add_scaled(&mut self, c: &Scalar, v: &SVec) {
        if c.is_zero() {
            return;
        }
        for (i, x) in v.iter() {
            self.terms.push((*i, c * x));
        }
    }

    pub fn add(&mut self, v: &SVec) {
        for (i, x) in v.iter() {
            self.terms.push((*i, x.clone()));
        }
    }

    pub fn finish(self) -> SVec {
        SVec::from_terms(self.terms)
    }
}
