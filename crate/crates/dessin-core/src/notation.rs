//! Cycle-notation parsing.
//!
//! Permutations are written the usual way, `(1, 2, 5, 3)(4)`, with derived
//! labels spelled by their tag suffix, `(1W, 2)(1B, 3)`. Parsing a pair
//! infers the shared ground set from both texts; see [`infer_ground`].

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Error;
use crate::label::{ElementLabel, GroundSet};
use crate::pair::PermutationPair;
use crate::perm::Permutation;

fn parse_err(at: usize, msg: &str) -> Error {
    Error::Parse { at, msg: String::from(msg) }
}

fn label_at(text: &str, at: usize) -> Result<ElementLabel, Error> {
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    if i == 0 {
        return Err(parse_err(at, "expected an element label"));
    }
    let index: u32 = text[..i]
        .parse()
        .map_err(|_| parse_err(at, "element index does not fit in 32 bits"))?;
    if index == 0 {
        return Err(parse_err(at, "element indexes start at 1"));
    }
    let mut label = ElementLabel::base(index);
    let mut depth = 0u32;
    for (j, &c) in bytes[i..].iter().enumerate() {
        if depth == 32 {
            return Err(parse_err(at + i + j, "tag depth limit is 32"));
        }
        label = match c {
            b'W' => label.white(),
            b'B' => label.black(),
            _ => return Err(parse_err(at + i + j, "expected tag W or B")),
        };
        depth += 1;
    }
    Ok(label)
}

/// Parses a single element label such as `3`, `3W`, or `12WB`.
pub fn parse_label(text: &str) -> Result<ElementLabel, Error> {
    let trimmed = text.trim_start();
    let at = text.len() - trimmed.len();
    label_at(trimmed.trim_end(), at)
}

/// Parses cycle-notation text into its groups of labels.
///
/// Groups are parenthesized, elements comma-separated, whitespace free.
/// Empty text parses to no groups (the identity). A label appearing twice
/// anywhere in the text is rejected, so the groups are disjoint cycles.
pub fn parse_cycles_text(text: &str) -> Result<Vec<Vec<ElementLabel>>, Error> {
    let bytes = text.as_bytes();
    let mut i = 0usize;
    let mut groups = Vec::new();
    let mut seen: Vec<ElementLabel> = Vec::new();
    loop {
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if i == bytes.len() {
            break;
        }
        if bytes[i] != b'(' {
            return Err(parse_err(i, "expected '('"));
        }
        let open = i;
        i += 1;
        let mut group = Vec::new();
        loop {
            while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            if i == bytes.len() {
                return Err(parse_err(open, "unclosed '('"));
            }
            if bytes[i] == b')' && group.is_empty() {
                return Err(parse_err(i, "a cycle needs at least one element"));
            }
            let start = i;
            while i < bytes.len()
                && (bytes[i].is_ascii_digit() || bytes[i] == b'W' || bytes[i] == b'B')
            {
                i += 1;
            }
            let label = label_at(&text[start..i], start)?;
            if seen.contains(&label) {
                return Err(Error::Duplicate(label));
            }
            seen.push(label);
            group.push(label);
            while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            if i == bytes.len() {
                return Err(parse_err(open, "unclosed '('"));
            }
            match bytes[i] {
                b',' => i += 1,
                b')' => {
                    i += 1;
                    break;
                }
                _ => return Err(parse_err(i, "expected ',' or ')'")),
            }
        }
        groups.push(group);
    }
    Ok(groups)
}

/// Infers the ground set shared by a pair from the labels its texts mention.
///
/// The degree `n` is the declared value if any, otherwise the largest root
/// index mentioned. The ground set contains every mentioned label, plus the
/// base label `i` for each `1 <= i <= n` whose index is not mentioned at all
/// (those are fixed by both permutations). An index mentioned only through
/// derived labels contributes no base label: that edge has been split and
/// only its pieces remain.
pub fn infer_ground(mentions: &[ElementLabel], degree: Option<u32>) -> Result<GroundSet, Error> {
    let max_root = mentions.iter().map(|l| l.root_index()).max();
    let n = match (degree, max_root) {
        (Some(n), _) => n,
        (None, Some(m)) => m,
        (None, None) => {
            return Err(parse_err(0, "no elements mentioned and no degree declared"))
        }
    };
    if n == 0 {
        return Err(Error::EmptyGround);
    }
    if let Some(d) = degree {
        for l in mentions {
            if l.root_index() > d {
                return Err(Error::DegreeExceeded { element: l.root_index(), degree: d });
            }
        }
    }
    let mut elems: Vec<ElementLabel> = mentions.to_vec();
    elems.sort();
    elems.dedup();
    let mut mentioned_index = alloc::vec![false; n as usize + 1];
    for l in &elems {
        mentioned_index[l.root_index() as usize] = true;
    }
    for i in 1..=n {
        if !mentioned_index[i as usize] {
            elems.push(ElementLabel::base(i));
        }
    }
    GroundSet::new(elems)
}

/// Parses one permutation in cycle notation over a known ground set.
pub fn parse_permutation(text: &str, ground: &GroundSet) -> Result<Permutation, Error> {
    let cycles = parse_cycles_text(text)?;
    Permutation::from_cycles(ground.clone(), &cycles)
}

/// Parses a white/black pair of cycle texts over their inferred ground set.
pub fn parse_pair(
    white: &str,
    black: &str,
    degree: Option<u32>,
) -> Result<PermutationPair, Error> {
    let white_cycles = parse_cycles_text(white)?;
    let black_cycles = parse_cycles_text(black)?;
    let mut mentions: Vec<ElementLabel> = Vec::new();
    for c in white_cycles.iter().chain(black_cycles.iter()) {
        mentions.extend_from_slice(c);
    }
    let ground = infer_ground(&mentions, degree)?;
    let w = Permutation::from_cycles(ground.clone(), &white_cycles)?;
    let b = Permutation::from_cycles(ground, &black_cycles)?;
    PermutationPair::new(w, b)
}
