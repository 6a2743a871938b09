//! Permutation pairs, their surface invariants, and the classification of
//! marked element pairs.

use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::label::{ElementLabel, GroundSet};
use crate::perm::{Cycle, Permutation};

/// How a marked pair `(a, b)` sits inside the faces of the pair.
///
/// The class is determined by which of `a`, `white(a)`, `b` share an orbit of
/// the product permutation, refined by arc position when all three share one.
/// Exactly one class applies to every marked pair with `a != b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TypeClass {
    U,
    N,
    P1,
    P2,
    P3,
    P4,
}

impl TypeClass {
    pub const ALL: [TypeClass; 6] = [
        TypeClass::U,
        TypeClass::N,
        TypeClass::P1,
        TypeClass::P2,
        TypeClass::P3,
        TypeClass::P4,
    ];

    pub(crate) fn index(self) -> usize {
        match self {
            TypeClass::U => 0,
            TypeClass::N => 1,
            TypeClass::P1 => 2,
            TypeClass::P2 => 3,
            TypeClass::P3 => 4,
            TypeClass::P4 => 5,
        }
    }
}

impl fmt::Display for TypeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeClass::U => "U",
            TypeClass::N => "N",
            TypeClass::P1 => "P1",
            TypeClass::P2 => "P2",
            TypeClass::P3 => "P3",
            TypeClass::P4 => "P4",
        };
        write!(f, "{s}")
    }
}

/// The marked pairs for which conjugating by `(a b)` can disconnect a
/// transitive pair, refined by the local picture that causes it.
///
/// The variants are mutually exclusive: each one requires a different
/// [`TypeClass`] of the marked pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExceptionalClass {
    None,
    Tame1A,
    Tame1B,
    Tame2,
    Wild,
}

impl ExceptionalClass {
    /// True for every variant except `None`.
    pub fn is_exceptional(self) -> bool {
        self != ExceptionalClass::None
    }

    /// True for the three tame variants.
    pub fn is_tame(self) -> bool {
        matches!(
            self,
            ExceptionalClass::Tame1A | ExceptionalClass::Tame1B | ExceptionalClass::Tame2
        )
    }
}

impl fmt::Display for ExceptionalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ExceptionalClass::None => "None",
            ExceptionalClass::Tame1A => "Tame1A",
            ExceptionalClass::Tame1B => "Tame1B",
            ExceptionalClass::Tame2 => "Tame2",
            ExceptionalClass::Wild => "Wild",
        };
        write!(f, "{s}")
    }
}

/// Sign of the genus change caused by conjugating the white permutation by
/// the transposition of a marked pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenusEffect {
    Raising,
    Lowering,
    Preserving,
}

impl fmt::Display for GenusEffect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GenusEffect::Raising => "Raising",
            GenusEffect::Lowering => "Lowering",
            GenusEffect::Preserving => "Preserving",
        };
        write!(f, "{s}")
    }
}

/// The basic invariants of a pair, bundled for display and serialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairReport {
    pub chi: i64,
    pub genus: i64,
    pub nu_white: usize,
    pub nu_black: usize,
    pub nu_product: usize,
    pub transitive: bool,
}

impl fmt::Display for PairReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "nu_white: {}", self.nu_white)?;
        writeln!(f, "nu_black: {}", self.nu_black)?;
        writeln!(f, "nu_product: {}", self.nu_product)?;
        writeln!(f, "chi: {}", self.chi)?;
        writeln!(f, "genus: {}", self.genus)?;
        write!(f, "transitive: {}", self.transitive)
    }
}

/// A pair of permutations of one ground set, read as a bicolored graph.
///
/// Cycles of `white` are the white vertices, cycles of `black` the black
/// ones, elements the edges. The product `white . black` (black first) plays
/// the role of the face permutation, and the Euler characteristic below is
/// computed from cycle counts alone, whether or not the pair is transitive.
#[derive(Clone, PartialEq, Eq)]
pub struct PermutationPair {
    white: Permutation,
    black: Permutation,
}

impl PermutationPair {
    /// Pairs two permutations; they must act on the same ground set.
    pub fn new(white: Permutation, black: Permutation) -> Result<Self, Error> {
        if white.ground() != black.ground() {
            return Err(Error::GroundMismatch);
        }
        Ok(PermutationPair { white, black })
    }

    pub fn white(&self) -> &Permutation {
        &self.white
    }

    pub fn black(&self) -> &Permutation {
        &self.black
    }

    pub fn ground(&self) -> &GroundSet {
        self.white.ground()
    }

    /// The face permutation `white . black` (black acts first).
    pub fn product(&self) -> Permutation {
        self.white.compose(&self.black).unwrap()
    }

    /// `nu(white) + nu(black) - |E| + nu(product)`; twice this short of 2 is
    /// the genus. Defined for every pair and additive over the orbits of the
    /// pair, so it is always even.
    pub fn euler_characteristic(&self) -> i64 {
        let n = self.ground().len() as i64;
        self.white.num_cycles() as i64 + self.black.num_cycles() as i64 - n
            + self.product().num_cycles() as i64
    }

    /// The genus `1 - chi/2` of the pair.
    pub fn genus(&self) -> i64 {
        let chi = self.euler_characteristic();
        debug_assert_eq!(chi.rem_euclid(2), 0);
        1 - chi / 2
    }

    /// Whether the group generated by the two permutations has one orbit.
    pub fn is_transitive(&self) -> bool {
        crate::oracle::is_transitive_oracle(self)
    }

    /// All invariants in one struct.
    pub fn report(&self) -> PairReport {
        PairReport {
            chi: self.euler_characteristic(),
            genus: self.genus(),
            nu_white: self.white.num_cycles(),
            nu_black: self.black.num_cycles(),
            nu_product: self.product().num_cycles(),
            transitive: self.is_transitive(),
        }
    }

    pub(crate) fn check_marked(&self, a: ElementLabel, b: ElementLabel) -> Result<(), Error> {
        if !self.ground().contains(a) {
            return Err(Error::NotInGround(a));
        }
        if !self.ground().contains(b) {
            return Err(Error::NotInGround(b));
        }
        if a == b {
            return Err(Error::SameElement(a));
        }
        Ok(())
    }

    /// Classifies a marked pair `(a, b)` by how `a`, `white(a)` and `b`
    /// are spread over the orbits of the product.
    pub fn classify_type(&self, a: ElementLabel, b: ElementLabel) -> Result<TypeClass, Error> {
        self.check_marked(a, b)?;
        let p = self.product();
        let wa = self.white.apply(a);
        let a_wa = p.same_orbit(a, wa)?;
        let a_b = p.same_orbit(a, b)?;
        Ok(if a_wa && a_b {
            if p.arc(a, b)?.contains(&wa) {
                TypeClass::P1
            } else {
                TypeClass::N
            }
        } else if a_wa {
            TypeClass::P2
        } else if a_b {
            TypeClass::P3
        } else if p.same_orbit(wa, b)? {
            TypeClass::P4
        } else {
            TypeClass::U
        })
    }

    /// Detects the marked pairs for which the transitivity of the conjugated
    /// pair is not guaranteed.
    ///
    /// Each variant refines one type class, so at most one applies.
    pub fn classify_exceptional(
        &self,
        a: ElementLabel,
        b: ElementLabel,
    ) -> Result<ExceptionalClass, Error> {
        let ty = self.classify_type(a, b)?;
        let p = self.product();
        let wa = self.white.apply(a);
        let wb = self.white.apply(b);
        Ok(match ty {
            TypeClass::P1 if p.arc(wa, b)?.contains(&wb) => ExceptionalClass::Tame1B,
            TypeClass::N if p.arc(b, wa)?.contains(&wb) => ExceptionalClass::Tame1A,
            TypeClass::P3 if p.same_orbit(wb, wa)? => ExceptionalClass::Tame2,
            TypeClass::P2 if self.classify_type(b, a)? == TypeClass::P2 => {
                ExceptionalClass::Wild
            }
            _ => ExceptionalClass::None,
        })
    }

    /// Predicts the sign of the genus change caused by conjugating the white
    /// permutation by `(a b)`, from the product-orbit picture around the four
    /// marked points `a`, `white(a)`, `b`, `white(b)`.
    pub fn genus_effect(&self, a: ElementLabel, b: ElementLabel) -> Result<GenusEffect, Error> {
        self.check_marked(a, b)?;
        let p = self.product();
        let wa = self.white.apply(a);
        let wb = self.white.apply(b);
        // x is isolated when its product orbit avoids the other three marks
        let isolated = |x: ElementLabel, others: [ElementLabel; 3]| -> Result<bool, Error> {
            for o in others {
                if p.same_orbit(x, o)? {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        let raising = (isolated(a, [wa, b, wb])? || isolated(b, [a, wa, wb])?)
            && (isolated(wa, [a, b, wb])? || isolated(wb, [a, wa, b])?);
        if raising {
            return Ok(GenusEffect::Raising);
        }
        if p.same_orbit(a, b)? && p.same_orbit(wa, wb)? {
            let fwd = p.arc(a, b)?;
            let back = p.arc(b, a)?;
            let avoids = |arc: &[ElementLabel]| !arc.contains(&wa) && !arc.contains(&wb);
            if avoids(&fwd) || avoids(&back) {
                return Ok(GenusEffect::Lowering);
            }
        }
        Ok(GenusEffect::Preserving)
    }

    /// The faces incident to an edge: the product orbits of `e` and of
    /// `white(e)`. One cycle when those coincide, otherwise two.
    pub fn faces_of_edge(&self, e: ElementLabel) -> Result<Vec<Cycle>, Error> {
        if !self.ground().contains(e) {
            return Err(Error::NotInGround(e));
        }
        let p = self.product();
        let we = self.white.apply(e);
        let mut faces = alloc::vec![Cycle::from_rotation(p.orbit(e)?)];
        if !p.same_orbit(e, we)? {
            faces.push(Cycle::from_rotation(p.orbit(we)?));
        }
        Ok(faces)
    }

    /// Removes one edge, splicing both permutations past it.
    ///
    /// Every other element keeps its image, except the preimage of `e`,
    /// which now maps to the old image of `e`.
    pub fn delete_edge(&self, e: ElementLabel) -> Result<PermutationPair, Error> {
        if !self.ground().contains(e) {
            return Err(Error::NotInGround(e));
        }
        if self.ground().len() == 1 {
            return Err(Error::LastEdge);
        }
        let ground = self.ground().without(e)?;
        let splice = |perm: &Permutation| {
            let image_of_e = perm.apply(e);
            Permutation::from_fn(ground.clone(), |x| {
                let img = perm.apply(x);
                if img == e {
                    image_of_e
                } else {
                    img
                }
            })
        };
        PermutationPair::new(splice(&self.white)?, splice(&self.black)?)
    }

    /// The closed boundary walk of the face through `e`: alternately an edge
    /// of the product orbit and its black image, starting at `e`. Its length
    /// is twice the orbit length.
    pub fn boundary_walk(&self, e: ElementLabel) -> Result<Vec<ElementLabel>, Error> {
        if !self.ground().contains(e) {
            return Err(Error::NotInGround(e));
        }
        let p = self.product();
        let mut walk = Vec::new();
        let mut x = e;
        loop {
            walk.push(x);
            walk.push(self.black.apply(x));
            x = p.apply(x);
            if x == e {
                break;
            }
        }
        Ok(walk)
    }

    /// Restricts the pair to a subset of its ground set.
    ///
    /// The subset must be invariant under both permutations; the error names
    /// an element whose image escapes.
    pub fn restrict_to(&self, subset: &[ElementLabel]) -> Result<PermutationPair, Error> {
        let ground = GroundSet::new(subset.to_vec())?;
        for e in ground.iter() {
            if !self.ground().contains(e) {
                return Err(Error::NotInGround(e));
            }
            if !ground.contains(self.white.apply(e)) || !ground.contains(self.black.apply(e)) {
                return Err(Error::NotInvariant(e));
            }
        }
        let white = Permutation::from_fn(ground.clone(), |x| self.white.apply(x))?;
        let black = Permutation::from_fn(ground, |x| self.black.apply(x))?;
        PermutationPair::new(white, black)
    }

    /// The orbits of the group generated by the two permutations, each orbit
    /// sorted, orbits ordered by smallest element.
    pub fn monodromy_orbits(&self) -> Vec<Vec<ElementLabel>> {
        let n = self.ground().len();
        let mut seen = alloc::vec![false; n];
        let mut orbits = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut stack = alloc::vec![start];
            let mut orbit = Vec::new();
            seen[start] = true;
            while let Some(i) = stack.pop() {
                orbit.push(self.ground().elem(i));
                for j in [self.white.apply_idx(i), self.black.apply_idx(i)] {
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            orbit.sort();
            orbits.push(orbit);
        }
        orbits
    }
}

impl fmt::Debug for PermutationPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.white, self.black)
    }
}
