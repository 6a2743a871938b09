//! Edge labels and ground sets.
//!
//! An edge is either a base element, written as a positive integer, or an
//! element derived from an existing edge by the reroute surgery. Deriving
//! appends a color tag: the white-side edge of `3` prints as `3W`, the
//! black-side edge as `3B`, and tags stack (`3WB` is the black-side edge
//! derived from `3W`).

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::Error;

/// Color tag appended to a label when an edge is split by the surgery.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tag {
    /// The piece that stays incident to the original white vertex.
    White,
    /// The piece that is rerouted; it stays incident to the original black vertex.
    Black,
}

/// A label for one edge: a base integer plus a (possibly empty) stack of tags.
///
/// Stored compactly: `tags` holds the derivation path as bits (0 = white,
/// 1 = black), lowest bit first, `depth` is the path length. Two labels are
/// equal exactly when their base and full derivation path coincide.
///
/// The ordering is total: labels sort by base index first; within one base,
/// a label precedes everything derived from it, and the white-derived subtree
/// precedes the black-derived subtree. So `3 < 3W < 3WB < 3B < 4`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ElementLabel {
    base: u32,
    depth: u8,
    tags: u32,
}

impl ElementLabel {
    /// Base label for a positive integer.
    ///
    /// Panics if `index` is zero; parsed input is validated before reaching
    /// this constructor.
    pub fn base(index: u32) -> Self {
        assert!(index >= 1, "base labels are positive integers");
        ElementLabel { base: index, depth: 0, tags: 0 }
    }

    /// The label derived from `self` by appending `tag`.
    pub fn derived(self, tag: Tag) -> Self {
        assert!(self.depth < 32, "derivation depth limit reached");
        let bit = match tag {
            Tag::White => 0u32,
            Tag::Black => 1u32,
        };
        ElementLabel {
            base: self.base,
            depth: self.depth + 1,
            tags: self.tags | (bit << self.depth),
        }
    }

    /// Shorthand for `derived(Tag::White)`.
    pub fn white(self) -> Self {
        self.derived(Tag::White)
    }

    /// Shorthand for `derived(Tag::Black)`.
    pub fn black(self) -> Self {
        self.derived(Tag::Black)
    }

    /// The label this one was derived from, or `None` for a base label.
    pub fn parent(self) -> Option<Self> {
        if self.depth == 0 {
            return None;
        }
        let depth = self.depth - 1;
        Some(ElementLabel {
            base: self.base,
            depth,
            tags: self.tags & !(1 << depth),
        })
    }

    /// True for labels with no derivation tags.
    pub fn is_base(self) -> bool {
        self.depth == 0
    }

    /// The integer at the root of the derivation path.
    pub fn root_index(self) -> u32 {
        self.base
    }

    fn tag_at(self, i: u8) -> Tag {
        if self.tags >> i & 1 == 0 {
            Tag::White
        } else {
            Tag::Black
        }
    }
}

impl Ord for ElementLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.base != other.base {
            return self.base.cmp(&other.base);
        }
        let shared = self.depth.min(other.depth);
        for i in 0..shared {
            let a = self.tags >> i & 1;
            let b = other.tags >> i & 1;
            if a != b {
                // white (0) sorts before black (1)
                return a.cmp(&b);
            }
        }
        self.depth.cmp(&other.depth)
    }
}

impl PartialOrd for ElementLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ElementLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        for i in 0..self.depth {
            match self.tag_at(i) {
                Tag::White => write!(f, "W")?,
                Tag::Black => write!(f, "B")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ElementLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The finite set of edges a pair of permutations acts on.
///
/// Held sorted and duplicate-free; element indices into the sorted order are
/// used as the internal representation of permutations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroundSet {
    elems: Vec<ElementLabel>,
}

impl GroundSet {
    /// Ground set from an arbitrary collection of labels.
    pub fn new(mut elems: Vec<ElementLabel>) -> Result<Self, Error> {
        if elems.is_empty() {
            return Err(Error::EmptyGround);
        }
        elems.sort();
        for w in elems.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Duplicate(w[0]));
            }
        }
        Ok(GroundSet { elems })
    }

    /// The ground set `{1, .., n}` of base labels.
    pub fn integers(n: u32) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::EmptyGround);
        }
        Ok(GroundSet {
            elems: (1..=n).map(ElementLabel::base).collect(),
        })
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    /// Never true; retained for iterator-style call sites.
    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Elements in sorted order.
    pub fn iter(&self) -> impl Iterator<Item = ElementLabel> + '_ {
        self.elems.iter().copied()
    }

    /// Elements in sorted order, as a slice.
    pub fn as_slice(&self) -> &[ElementLabel] {
        &self.elems
    }

    /// Membership test.
    pub fn contains(&self, e: ElementLabel) -> bool {
        self.index_of(e).is_some()
    }

    /// Position of `e` in the sorted order.
    pub fn index_of(&self, e: ElementLabel) -> Option<usize> {
        self.elems.binary_search(&e).ok()
    }

    /// Element at a given position; panics if out of range.
    pub fn elem(&self, i: usize) -> ElementLabel {
        self.elems[i]
    }

    /// The ground set with one element removed.
    pub fn without(&self, e: ElementLabel) -> Result<Self, Error> {
        let i = self.index_of(e).ok_or(Error::NotInGround(e))?;
        if self.elems.len() == 1 {
            return Err(Error::EmptyGround);
        }
        let mut elems = self.elems.clone();
        elems.remove(i);
        Ok(GroundSet { elems })
    }

    /// The ground set with `old` replaced by each label in `new`.
    pub fn replace(&self, old: ElementLabel, new: &[ElementLabel]) -> Result<Self, Error> {
        self.index_of(old).ok_or(Error::NotInGround(old))?;
        let mut elems: Vec<ElementLabel> =
            self.elems.iter().copied().filter(|&x| x != old).collect();
        for &n in new {
            if self.contains(n) {
                return Err(Error::Duplicate(n));
            }
            elems.push(n);
        }
        GroundSet::new(elems)
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use alloc::vec;

    #[test]
    fn label_display_forms() {
        let three = ElementLabel::base(3);
        assert_eq!(format!("{three}"), "3");
        assert_eq!(format!("{}", three.white()), "3W");
        assert_eq!(format!("{}", three.black()), "3B");
        assert_eq!(format!("{}", three.white().black()), "3WB");
    }

    #[test]
    fn label_order_parent_first_white_before_black() {
        let three = ElementLabel::base(3);
        let four = ElementLabel::base(4);
        let mut labels = vec![four, three.black(), three.white().black(), three, three.white()];
        labels.sort();
        assert_eq!(
            labels,
            vec![three, three.white(), three.white().black(), three.black(), four]
        );
    }

    #[test]
    fn label_parent_round_trip() {
        let l = ElementLabel::base(7).black().white();
        assert_eq!(l.parent(), Some(ElementLabel::base(7).black()));
        assert_eq!(l.parent().unwrap().parent(), Some(ElementLabel::base(7)));
        assert_eq!(ElementLabel::base(7).parent(), None);
        assert_eq!(l.root_index(), 7);
    }

    #[test]
    fn ground_set_sorts_and_rejects_duplicates() {
        let a = ElementLabel::base(2);
        let b = ElementLabel::base(1);
        let g = GroundSet::new(vec![a, b]).unwrap();
        assert_eq!(g.as_slice(), &[b, a]);
        assert_eq!(g.index_of(a), Some(1));
        assert!(matches!(
            GroundSet::new(vec![a, a]),
            Err(Error::Duplicate(_))
        ));
        assert!(matches!(GroundSet::new(vec![]), Err(Error::EmptyGround)));
    }

    #[test]
    fn ground_set_replace_splits_an_edge() {
        let g = GroundSet::integers(3).unwrap();
        let one = ElementLabel::base(1);
        let g2 = g.replace(one, &[one.white(), one.black()]).unwrap();
        assert_eq!(g2.len(), 4);
        assert!(g2.contains(one.white()));
        assert!(g2.contains(one.black()));
        assert!(!g2.contains(one));
        // collision with an existing label is refused
        assert!(g2.replace(one.white(), &[one.white().white(), one.black()]).is_err());
    }
}
