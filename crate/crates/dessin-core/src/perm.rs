//! Permutations of a ground set, their cycles, and product-sequences.

use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::label::{ElementLabel, GroundSet};

/// A cycle of a permutation, stored in canonical rotation.
///
/// The stored sequence always starts at the cycle's smallest element, so two
/// `Cycle` values are equal exactly when they describe the same cyclic order.
/// Fixed points are legitimate cycles of length one and are always carried
/// explicitly.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    elems: Vec<ElementLabel>,
}

impl Cycle {
    /// Canonicalizes an arbitrary rotation of a cycle.
    ///
    /// The elements must be distinct; this is the caller's responsibility
    /// (cycles produced by [`Permutation::cycles`] always are).
    pub fn from_rotation(elems: Vec<ElementLabel>) -> Self {
        assert!(!elems.is_empty(), "a cycle has at least one element");
        let min_pos = elems
            .iter()
            .enumerate()
            .min_by_key(|(_, e)| **e)
            .map(|(i, _)| i)
            .unwrap();
        let mut rotated = Vec::with_capacity(elems.len());
        rotated.extend_from_slice(&elems[min_pos..]);
        rotated.extend_from_slice(&elems[..min_pos]);
        Cycle { elems: rotated }
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    /// True for a fixed point.
    pub fn is_fixed_point(&self) -> bool {
        self.elems.len() == 1
    }

    /// The smallest element; cycles are identified by it. Not called `min`
    /// so the derived `Ord::min` cannot shadow it on owned values.
    pub fn min_label(&self) -> ElementLabel {
        self.elems[0]
    }

    /// Elements in canonical rotation order.
    pub fn as_slice(&self) -> &[ElementLabel] {
        &self.elems
    }

    /// Membership test.
    pub fn contains(&self, e: ElementLabel) -> bool {
        self.elems.contains(&e)
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A bijection of a [`GroundSet`] onto itself.
///
/// Internally a table of indices into the sorted ground set; the bijection
/// property is checked at every constructor. Equality compares ground set and
/// mapping, never any notation the permutation was built from.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    ground: GroundSet,
    images: Vec<u32>,
}

impl Permutation {
    /// The identity on a ground set.
    pub fn identity(ground: GroundSet) -> Self {
        let images = (0..ground.len() as u32).collect();
        Permutation { ground, images }
    }

    /// Builds a permutation from a list of disjoint cycles.
    ///
    /// Elements of the ground set not mentioned in any cycle are fixed.
    /// Mentioning an element twice or mentioning a non-member is an error.
    pub fn from_cycles(ground: GroundSet, cycles: &[Vec<ElementLabel>]) -> Result<Self, Error> {
        let n = ground.len();
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut mentioned = alloc::vec![false; n];
        for cycle in cycles {
            if cycle.is_empty() {
                return Err(Error::EmptyGround);
            }
            let idx: Vec<usize> = cycle
                .iter()
                .map(|&e| ground.index_of(e).ok_or(Error::NotInGround(e)))
                .collect::<Result<_, _>>()?;
            for (&i, &e) in idx.iter().zip(cycle.iter()) {
                if mentioned[i] {
                    return Err(Error::Duplicate(e));
                }
                mentioned[i] = true;
            }
            for k in 0..idx.len() {
                images[idx[k]] = idx[(k + 1) % idx.len()] as u32;
            }
        }
        Ok(Permutation { ground, images })
    }

    /// Builds a permutation directly from an index table.
    ///
    /// `images[i]` is the position of the image of the element at position
    /// `i`. Used by the enumeration harness, which produces tables that are
    /// bijections by construction.
    pub(crate) fn from_images_unchecked(ground: GroundSet, images: Vec<u32>) -> Self {
        debug_assert_eq!(ground.len(), images.len());
        debug_assert!({
            let mut seen = alloc::vec![false; images.len()];
            images.iter().all(|&i| {
                let fresh = !seen[i as usize];
                seen[i as usize] = true;
                fresh
            })
        });
        Permutation { ground, images }
    }

    /// Builds a permutation from an arbitrary map on a ground set, checking
    /// that the map is a bijection of it.
    pub(crate) fn from_fn(
        ground: GroundSet,
        f: impl Fn(ElementLabel) -> ElementLabel,
    ) -> Result<Permutation, Error> {
        let n = ground.len();
        let mut images = alloc::vec![0u32; n];
        let mut hit = alloc::vec![false; n];
        for (i, e) in ground.iter().enumerate() {
            let img = f(e);
            let j = ground.index_of(img).ok_or(Error::NotInGround(img))?;
            if hit[j] {
                return Err(Error::Duplicate(img));
            }
            hit[j] = true;
            images[i] = j as u32;
        }
        Ok(Permutation { ground, images })
    }

    /// The ground set this permutation acts on.
    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// Number of elements moved or fixed, i.e. the ground set size.
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of an element.
    ///
    /// Panics if `e` is not in the ground set; validation belongs to the
    /// parsing layer, analysis entry points check marked elements up front.
    pub fn apply(&self, e: ElementLabel) -> ElementLabel {
        let i = self
            .ground
            .index_of(e)
            .unwrap_or_else(|| panic!("element {e} is not in the ground set"));
        self.ground.elem(self.images[i] as usize)
    }

    pub(crate) fn apply_idx(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub(crate) fn index_of(&self, e: ElementLabel) -> Result<usize, Error> {
        self.ground.index_of(e).ok_or(Error::NotInGround(e))
    }

    /// The inverse permutation.
    pub fn inverse(&self) -> Self {
        let mut images = alloc::vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { ground: self.ground.clone(), images }
    }

    /// Functional composition: `self.compose(q)` maps `e` to `self(q(e))`.
    ///
    /// `q` acts first. Right-action systems write this product in the
    /// opposite order; see the crate-level notes.
    pub fn compose(&self, q: &Permutation) -> Result<Permutation, Error> {
        if self.ground != q.ground {
            return Err(Error::GroundMismatch);
        }
        let images = q.images.iter().map(|&i| self.images[i as usize]).collect();
        Ok(Permutation { ground: self.ground.clone(), images })
    }

    /// Conjugation `t . self . t^-1`, the relabeling of `self` along `t`.
    pub fn conjugate(&self, t: &Permutation) -> Result<Permutation, Error> {
        if self.ground != t.ground {
            return Err(Error::GroundMismatch);
        }
        let t_inv = t.inverse();
        let images = (0..self.images.len())
            .map(|i| {
                let j = t_inv.images[i] as usize;
                t.images[self.images[j] as usize]
            })
            .collect();
        Ok(Permutation { ground: self.ground.clone(), images })
    }

    /// The transposition exchanging two elements of a ground set.
    pub fn transposition(
        ground: GroundSet,
        a: ElementLabel,
        b: ElementLabel,
    ) -> Result<Permutation, Error> {
        let ia = ground.index_of(a).ok_or(Error::NotInGround(a))?;
        let ib = ground.index_of(b).ok_or(Error::NotInGround(b))?;
        if a == b {
            return Err(Error::SameElement(a));
        }
        let mut images: Vec<u32> = (0..ground.len() as u32).collect();
        images.swap(ia, ib);
        Ok(Permutation { ground, images })
    }

    /// Number of cycles, fixed points included.
    pub fn num_cycles(&self) -> usize {
        let mut seen = alloc::vec![false; self.images.len()];
        let mut count = 0;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i] as usize;
            }
        }
        count
    }

    /// The cycle decomposition, each cycle in canonical rotation, cycles
    /// ordered by their smallest element, fixed points included.
    pub fn cycles(&self) -> Vec<Cycle> {
        let mut seen = alloc::vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(self.ground.elem(i));
                i = self.images[i] as usize;
            }
            // scanning the sorted ground set means `start` is the minimum
            out.push(Cycle { elems: cycle });
        }
        out
    }

    /// The orbit of `e`, listed in traversal order starting at `e`.
    pub fn orbit(&self, e: ElementLabel) -> Result<Vec<ElementLabel>, Error> {
        let start = self.index_of(e)?;
        let mut out = Vec::new();
        let mut i = start;
        loop {
            out.push(self.ground.elem(i));
            i = self.images[i] as usize;
            if i == start {
                break;
            }
        }
        Ok(out)
    }

    /// The smallest element of the orbit of `e`; orbits are identified by it.
    pub fn orbit_min(&self, e: ElementLabel) -> Result<ElementLabel, Error> {
        Ok(self.orbit(e)?.into_iter().min().unwrap())
    }

    /// Whether two elements lie in the same orbit.
    pub fn same_orbit(&self, x: ElementLabel, y: ElementLabel) -> Result<bool, Error> {
        let start = self.index_of(x)?;
        let target = self.index_of(y)?;
        let mut i = start;
        loop {
            if i == target {
                return Ok(true);
            }
            i = self.images[i] as usize;
            if i == start {
                return Ok(false);
            }
        }
    }

    /// The shortest sequence `x, self(x), self(self(x)), .., y`.
    ///
    /// A single-element sequence when `x == y`. Fails if the elements lie in
    /// different orbits.
    pub fn minimal_sequence(
        &self,
        x: ElementLabel,
        y: ElementLabel,
    ) -> Result<Vec<ElementLabel>, Error> {
        let start = self.index_of(x)?;
        let target = self.index_of(y)?;
        let mut out = Vec::new();
        let mut i = start;
        loop {
            out.push(self.ground.elem(i));
            if i == target {
                return Ok(out);
            }
            i = self.images[i] as usize;
            if i == start {
                return Err(Error::DifferentOrbits(x, y));
            }
        }
    }

    /// The minimal sequence from `x` to `y` with its head removed.
    ///
    /// Empty exactly when `x == y`; otherwise it ends at `y`, never contains
    /// `x`, and its interior elements differ from both endpoints.
    pub fn arc(&self, x: ElementLabel, y: ElementLabel) -> Result<Vec<ElementLabel>, Error> {
        let mut seq = self.minimal_sequence(x, y)?;
        seq.remove(0);
        Ok(seq)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in self.cycles() {
            write!(f, "{cycle}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
