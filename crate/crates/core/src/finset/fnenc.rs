use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// A function `{0..n-1} -> {0..cod-1}` stored as its value array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FnEnc {
    cod: u32,
    map: Vec<u32>,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("entry {index} has value {value}, outside codomain of size {cod}")]
pub struct FnEncError {
    pub index: usize,
    pub value: u32,
    pub cod: u32,
}

impl FnEnc {
    pub fn new(map: Vec<u32>, cod: usize) -> Result<Self, FnEncError> {
        let cod = cod as u32;
        if let Some((index, &value)) = map.iter().enumerate().find(|(_, &v)| v >= cod) {
            return Err(FnEncError { index, value, cod });
        }
        Ok(FnEnc { cod, map })
    }

    /// Builds without range checks; callers guarantee `map[i] < cod`.
    pub(crate) fn raw(map: Vec<u32>, cod: usize) -> Self {
        debug_assert!(map.iter().all(|&v| (v as usize) < cod));
        FnEnc { cod: cod as u32, map }
    }

    pub fn from_fn(dom: usize, cod: usize, f: impl Fn(usize) -> usize) -> Self {
        Self::raw((0..dom).map(|i| f(i) as u32).collect(), cod)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i| i)
    }

    pub fn constant(dom: usize, cod: usize, value: usize) -> Self {
        Self::from_fn(dom, cod, |_| value)
    }

    pub fn dom(&self) -> usize {
        self.map.len()
    }

    pub fn cod(&self) -> usize {
        self.cod as usize
    }

    pub fn at(&self, i: usize) -> usize {
        self.map[i] as usize
    }

    pub fn values(&self) -> &[u32] {
        &self.map
    }

    pub fn into_values(self) -> Vec<u32> {
        self.map
    }

    /// `self ∘ f`: first `f`, then `self`.
    pub fn after(&self, f: &FnEnc) -> FnEnc {
        assert_eq!(f.cod(), self.dom(), "composing {f:?} into {self:?}");
        FnEnc { cod: self.cod, map: f.map.iter().map(|&x| self.map[x as usize]).collect() }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod()];
        self.map.iter().all(|&v| !std::mem::replace(&mut seen[v as usize], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod()];
        for &v in &self.map {
            seen[v as usize] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_bijective(&self) -> bool {
        self.dom() == self.cod() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<FnEnc> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0u32; self.dom()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Some(FnEnc { cod: self.dom() as u32, map: inv })
    }

    /// Position of this function in the lexicographic listing of all maps `dom -> cod`.
    pub fn lex_index(&self) -> usize {
        self.map.iter().fold(0usize, |acc, &v| acc * self.cod() + v as usize)
    }

    /// Inverse of [`FnEnc::lex_index`].
    pub fn from_lex_index(dom: usize, cod: usize, mut index: usize) -> FnEnc {
        let mut map = vec![0u32; dom];
        for slot in map.iter_mut().rev() {
            *slot = (index % cod) as u32;
            index /= cod;
        }
        FnEnc::raw(map, cod)
    }
}

impl fmt::Debug for FnEnc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}:{}", self.map, self.cod)
    }
}

/// Number of maps `dom -> cod`, or `None` on overflow.
pub fn count_functions(dom: usize, cod: usize) -> Option<usize> {
    (cod as u64).checked_pow(dom as u32).and_then(|c| usize::try_from(c).ok())
}

/// All maps `dom -> cod` in lexicographic order.
pub fn all_functions(dom: usize, cod: usize) -> impl Iterator<Item = FnEnc> {
    let total = count_functions(dom, cod).expect("hom-set too large to enumerate");
    (0..total).map(move |i| FnEnc::from_lex_index(dom, cod, i))
}

/// All bijections of `{0..n-1}` in lexicographic order.
pub fn permutations(n: usize) -> Vec<FnEnc> {
    fn go(prefix: &mut Vec<u32>, used: &mut [bool], out: &mut Vec<FnEnc>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(FnEnc::raw(prefix.clone(), n));
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                prefix.push(v as u32);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}
