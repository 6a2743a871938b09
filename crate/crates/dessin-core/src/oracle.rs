//! Brute-force verification of every classification, prediction and graph
//! correspondence over all pairs of a small degree.
//!
//! The harness enumerates every tuple `(white, black, a, b)` of a degree (or
//! a deterministic sample of them), runs each claim as an independent check,
//! and reports per-check counts with the first counterexample found. Checks
//! deliberately recompute everything from scratch along a second route, so a
//! bug in one code path cannot silently agree with itself.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::graph::{build_model, is_transitive_via_graph, BicoloredGraph};
use crate::label::{ElementLabel, GroundSet};
use crate::pair::{ExceptionalClass, GenusEffect, PermutationPair, TypeClass};
use crate::perm::{Cycle, Permutation};
use crate::reroute::{
    conjugate_by_transposition, double_reroute, predict_branch_type, reroute, Row,
};

/// Transitivity by plain breadth-first closure over images and preimages of
/// both permutations; the reference against the graph route.
pub fn is_transitive_oracle(pair: &PermutationPair) -> bool {
    let n = pair.ground().len();
    let w = pair.white();
    let b = pair.black();
    let wi = w.inverse();
    let bi = b.inverse();
    let mut seen = alloc::vec![false; n];
    seen[0] = true;
    let mut stack = alloc::vec![0usize];
    let mut count = 1;
    while let Some(i) = stack.pop() {
        for j in [
            w.apply_idx(i),
            b.apply_idx(i),
            wi.apply_idx(i),
            bi.apply_idx(i),
        ] {
            if !seen[j] {
                seen[j] = true;
                count += 1;
                stack.push(j);
            }
        }
    }
    count == n
}

fn next_permutation(a: &mut [u32]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Every permutation of a ground set, ordered lexicographically by image
/// table, starting at the identity.
pub fn all_permutations(ground: &GroundSet) -> Vec<Permutation> {
    let n = ground.len();
    let mut images: Vec<u32> = (0..n as u32).collect();
    let mut out = Vec::new();
    loop {
        out.push(Permutation::from_images_unchecked(
            ground.clone(),
            images.clone(),
        ));
        if !next_permutation(&mut images) {
            break;
        }
    }
    out
}

fn factorial(n: u32) -> u64 {
    (1..=n as u64).product()
}

/// The permutation of `{0, .., n-1}` at a lexicographic rank, as an image
/// table; rank 0 is the identity.
fn unrank_permutation(mut rank: u64, n: usize) -> Vec<u32> {
    let mut pool: Vec<u32> = (0..n as u32).collect();
    let mut out = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let f = factorial(i as u32);
        let d = (rank / f) as usize;
        rank %= f;
        out.push(pool.remove(d));
    }
    out
}

const SAMPLED_MAX_DEGREE: u32 = 11;

/// Number of `(white, black, a, b)` tuples of one degree.
pub fn tuple_count(degree: u32) -> Result<u64, Error> {
    if !(2..=SAMPLED_MAX_DEGREE).contains(&degree) {
        return Err(Error::DegreeOutOfRange {
            degree,
            min: 2,
            max: SAMPLED_MAX_DEGREE,
        });
    }
    let f = factorial(degree);
    Ok(f * f * degree as u64 * (degree as u64 - 1))
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Tuning knobs of the harness.
///
/// `swap_n_p1` is a deliberate fault: the classification fed to the reroute
/// and branch-table checks has `N` and `P1` exchanged. A healthy harness must
/// report failures with it switched on; this is how the tests prove the
/// checks can actually see a wrong classification.
#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    pub swap_n_p1: bool,
}

/// One failing tuple, rendered in cycle notation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// Enumeration rank of the tuple; used to keep the first counterexample
    /// deterministic when chunked reports are merged.
    pub rank: u64,
    pub white: String,
    pub black: String,
    pub a: String,
    pub b: String,
    pub expected: String,
    pub actual: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "white={} black={} a={} b={} expected: {} actual: {}",
            self.white, self.black, self.a, self.b, self.expected, self.actual
        )
    }
}

/// Outcome of a single named check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub checked: u64,
    pub failed: u64,
    pub first: Option<Counterexample>,
}

#[derive(Debug, Clone, Default)]
struct CheckSlot {
    checked: u64,
    failed: u64,
    first: Option<Counterexample>,
}

impl CheckSlot {
    fn record(&mut self, ok: bool, make: impl FnOnce() -> Counterexample) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            let ce = make();
            if self.first.as_ref().map_or(true, |f| ce.rank < f.rank) {
                self.first = Some(ce);
            }
        }
    }
}

const CHECK_NAMES: [&str; 21] = [
    "chi-even",
    "chi-additivity",
    "oracle-vs-graph",
    "cycles-vs-components",
    "boundary-double-cover",
    "edge-deletion",
    "tree-case",
    "type-partition",
    "exceptional-symmetry",
    "reroute-bookkeeping",
    "reroute-theorem",
    "branch-tables",
    "transitivity-theorem",
    "fewer-cycles-transitive",
    "sphere-criterion",
    "genus-effect",
    "conjugation-vs-double-reroute",
    "wild-walks",
    "tame-walks",
    "two-walks-imply-connected",
    "model-surgery",
];

const AMBIGUITY_CHECK: &str = "exceptional-ambiguity";
const COVERAGE_CHECK: &str = "branch-row-coverage";

/// Aggregate result of a verification run.
///
/// `checks` carries one row per named check; the two synthetic rows at the
/// end (`exceptional-ambiguity`, `branch-row-coverage`) judge the run as a
/// whole and are recomputed whenever reports are merged.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub degree: u32,
    pub cases_checked: u64,
    pub sampled: bool,
    pub checks: Vec<CheckOutcome>,
    /// Hits per branch rule, indexed by source class and row.
    pub branch_row_coverage: [[u64; 6]; 6],
    /// Transitive tuples of tame exceptional class whose conjugated pair
    /// stayed transitive, resp. split. Both nonzero on a large enough full
    /// run; that ambiguity is exactly why the class exists.
    pub tame_conj_transitive: u64,
    pub tame_conj_split: u64,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.failed == 0)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree: {}", self.degree)?;
        writeln!(f, "cases: {}", self.cases_checked)?;
        writeln!(f, "sampled: {}", self.sampled)?;
        for c in &self.checks {
            write!(f, "check {}: checked={} failed={}", c.name, c.checked, c.failed)?;
            writeln!(f)?;
            if let Some(ce) = &c.first {
                writeln!(f, "  first: {ce}")?;
            }
        }
        for (ti, ty) in TypeClass::ALL.iter().enumerate() {
            write!(f, "branch rows {ty}:")?;
            for (ri, row) in Row::ALL.iter().enumerate() {
                write!(f, " {row}={}", self.branch_row_coverage[ti][ri])?;
            }
            writeln!(f)?;
        }
        write!(
            f,
            "tame conjugations: transitive={} split={}",
            self.tame_conj_transitive, self.tame_conj_split
        )?;
        writeln!(f)?;
        write!(
            f,
            "result: {}",
            if self.all_passed() { "PASS" } else { "FAIL" }
        )
    }
}

struct Harness {
    options: VerifyOptions,
    sampled: bool,
    slots: Vec<CheckSlot>,
    coverage: [[u64; 6]; 6],
    tame_conj_transitive: u64,
    tame_conj_split: u64,
    cases: u64,
}

struct PairCtx {
    pair: PermutationPair,
    product: Permutation,
    chi: i64,
    genus: i64,
    nu_product: usize,
    transitive: bool,
    model: BicoloredGraph,
}

impl PairCtx {
    fn new(pair: PermutationPair) -> Self {
        let product = pair.product();
        let chi = pair.euler_characteristic();
        PairCtx {
            chi,
            genus: 1 - chi / 2,
            nu_product: product.num_cycles(),
            transitive: is_transitive_oracle(&pair),
            model: build_model(&pair),
            product,
            pair,
        }
    }
}

fn slot_index(name: &str) -> usize {
    CHECK_NAMES.iter().position(|n| *n == name).unwrap()
}

impl Harness {
    fn new(options: VerifyOptions, sampled: bool) -> Self {
        Harness {
            options,
            sampled,
            slots: alloc::vec![CheckSlot::default(); CHECK_NAMES.len()],
            coverage: [[0; 6]; 6],
            tame_conj_transitive: 0,
            tame_conj_split: 0,
            cases: 0,
        }
    }

    fn mutate(&self, ty: TypeClass) -> TypeClass {
        if self.options.swap_n_p1 {
            match ty {
                TypeClass::N => TypeClass::P1,
                TypeClass::P1 => TypeClass::N,
                other => other,
            }
        } else {
            ty
        }
    }

    fn slot(&mut self, name: &'static str) -> &mut CheckSlot {
        &mut self.slots[slot_index(name)]
    }

    fn pair_checks(&mut self, ctx: &PairCtx, rank: u64) {
        let pair = &ctx.pair;
        let ground = pair.ground().clone();
        let n = ground.len();
        let ce = |expected: String, actual: String| Counterexample {
            rank,
            white: format!("{}", pair.white()),
            black: format!("{}", pair.black()),
            a: String::from("-"),
            b: String::from("-"),
            expected,
            actual,
        };

        let chi = ctx.chi;
        self.slot("chi-even").record(chi.rem_euclid(2) == 0, || {
            ce(String::from("even characteristic"), format!("chi = {chi}"))
        });

        let orbits = pair.monodromy_orbits();
        let chi_sum: i64 = orbits
            .iter()
            .map(|o| pair.restrict_to(o).unwrap().euler_characteristic())
            .sum();
        self.slot("chi-additivity").record(chi_sum == chi, || {
            ce(
                format!("orbit characteristics summing to {chi}"),
                format!("sum = {chi_sum}"),
            )
        });

        let graph_transitive = is_transitive_via_graph(pair);
        self.slot("oracle-vs-graph")
            .record(ctx.transitive == graph_transitive, || {
                ce(
                    format!("closure says transitive = {}", ctx.transitive),
                    format!("graph says transitive = {graph_transitive}"),
                )
            });

        let components = ctx.model.component_count();
        self.slot("cycles-vs-components")
            .record(orbits.len() == components, || {
                ce(
                    format!("{} monodromy orbits", orbits.len()),
                    format!("{components} graph components"),
                )
            });

        let mut covered = alloc::vec![0u32; n];
        for cycle in ctx.product.cycles() {
            for e in pair.boundary_walk(cycle.min_label()).unwrap() {
                covered[ground.index_of(e).unwrap()] += 1;
            }
        }
        self.slot("boundary-double-cover")
            .record(covered.iter().all(|&c| c == 2), || {
                ce(
                    String::from("every edge covered exactly twice"),
                    format!("cover counts {covered:?}"),
                )
            });

        for e in ground.iter() {
            if pair.white().apply(e) == e || pair.black().apply(e) == e {
                continue;
            }
            let we = pair.white().apply(e);
            let faces = pair.faces_of_edge(e).unwrap();
            let deleted = pair.delete_edge(e).unwrap();
            let delta = deleted.euler_characteristic() - chi;
            let expected_delta = if faces.len() == 1 { 2 } else { 0 };
            let mut expected: Vec<Cycle> = ctx
                .product
                .cycles()
                .into_iter()
                .filter(|c| !c.contains(e) && !c.contains(we))
                .collect();
            if faces.len() == 1 {
                // the face splits along the two sequences between e and white(e)
                let seq = ctx.product.minimal_sequence(e, we).unwrap();
                let c0 = &seq[1..seq.len() - 1];
                if !c0.is_empty() {
                    expected.push(Cycle::from_rotation(c0.to_vec()));
                }
                let mut c1 = ctx.product.minimal_sequence(we, e).unwrap();
                c1.pop();
                expected.push(Cycle::from_rotation(c1));
            } else {
                // the two faces merge, with e dropped from its loop
                let e_loop = ctx.product.orbit(e).unwrap();
                let we_loop = ctx.product.orbit(we).unwrap();
                let merged: Vec<ElementLabel> =
                    e_loop[1..].iter().chain(we_loop.iter()).copied().collect();
                expected.push(Cycle::from_rotation(merged));
            }
            expected.sort();
            let mut actual = deleted.product().cycles();
            actual.sort();
            self.slot("edge-deletion")
                .record(delta == expected_delta && expected == actual, || {
                    let faces = faces.len();
                    Counterexample {
                        rank,
                        white: format!("{}", pair.white()),
                        black: format!("{}", pair.black()),
                        a: format!("{e}"),
                        b: String::from("-"),
                        expected: format!(
                            "chi delta {expected_delta} ({faces} faces) and product cycles {expected:?}"
                        ),
                        actual: format!("chi delta {delta}, product cycles {actual:?}"),
                    }
                });
        }

        if !self.sampled && ctx.transitive && chi == 2 && ctx.nu_product == 1 {
            // a tree pair: conjugating white by any permutation keeps the
            // pair transitive exactly when the product stays a single cycle
            for s in all_permutations(&ground) {
                let conj = PermutationPair::new(
                    pair.white().conjugate(&s).unwrap(),
                    pair.black().clone(),
                )
                .unwrap();
                let transitive = is_transitive_oracle(&conj);
                let single = conj.product().num_cycles() == 1;
                self.slot("tree-case").record(transitive == single, || {
                    ce(
                        format!("transitive iff single product cycle, conjugator {s}"),
                        format!("transitive = {transitive}, single cycle = {single}"),
                    )
                });
            }
        }
    }

    fn tuple_checks(&mut self, ctx: &PairCtx, a: ElementLabel, b: ElementLabel, rank: u64) {
        self.cases += 1;
        let pair = &ctx.pair;
        let p = &ctx.product;
        let wa = pair.white().apply(a);
        let ce = |expected: String, actual: String| Counterexample {
            rank,
            white: format!("{}", pair.white()),
            black: format!("{}", pair.black()),
            a: format!("{a}"),
            b: format!("{b}"),
            expected,
            actual,
        };

        let ty = pair.classify_type(a, b).unwrap();
        let exc = pair.classify_exceptional(a, b).unwrap();
        let effect = pair.genus_effect(a, b).unwrap();

        // independently written predicates must partition the marked pairs
        let same = |x: ElementLabel, y: ElementLabel| p.same_orbit(x, y).unwrap();
        let pred_u = a != wa && wa != b && !same(a, wa) && !same(a, b) && !same(wa, b);
        let pred_n = same(a, wa) && same(wa, b) && !p.arc(a, b).unwrap().contains(&wa);
        let pred_p1 = same(a, b) && p.arc(a, b).unwrap().contains(&wa);
        let pred_p2 = same(a, wa) && !same(a, b);
        let pred_p3 = same(a, b) && !same(a, wa);
        let pred_p4 = same(wa, b) && !same(a, wa);
        let flags = [pred_u, pred_n, pred_p1, pred_p2, pred_p3, pred_p4];
        let hits = flags.iter().filter(|f| **f).count();
        let agrees = flags[ty.index()];
        self.slot("type-partition").record(hits == 1 && agrees, || {
            let held: Vec<&str> = TypeClass::ALL
                .iter()
                .zip(flags.iter())
                .filter(|(_, f)| **f)
                .map(|(t, _)| match t {
                    TypeClass::U => "u",
                    TypeClass::N => "n",
                    TypeClass::P1 => "p1",
                    TypeClass::P2 => "p2",
                    TypeClass::P3 => "p3",
                    TypeClass::P4 => "p4",
                })
                .collect();
            ce(
                format!("exactly the predicate of class {ty}"),
                format!("predicates holding: {held:?}"),
            )
        });

        let exc_swapped = pair.classify_exceptional(b, a).unwrap();
        let sym_ok = ((exc == ExceptionalClass::Tame1A)
            == (exc_swapped == ExceptionalClass::Tame1B))
            && ((exc == ExceptionalClass::Wild) == (exc_swapped == ExceptionalClass::Wild));
        self.slot("exceptional-symmetry").record(sym_ok, || {
            ce(
                String::from("Tame1A swapped is Tame1B, Wild is symmetric"),
                format!("(a, b) gives {exc}, (b, a) gives {exc_swapped}"),
            )
        });

        let r = reroute(pair, a, b).unwrap();
        let r_chi = r.pair.euler_characteristic();
        let books_ok = r.pair.white().num_cycles() == pair.white().num_cycles()
            && r.pair.black().num_cycles() == pair.black().num_cycles() + 1
            && r.pair.ground().len() == pair.ground().len() + 1
            && ctx.chi - r_chi
                == ctx.nu_product as i64 - r.pair.product().num_cycles() as i64;
        self.slot("reroute-bookkeeping").record(books_ok, || {
            ce(
                String::from("cycle counts and characteristic move in lockstep"),
                format!(
                    "nu_w {}->{}, nu_b {}->{}, chi {}->{}",
                    pair.white().num_cycles(),
                    r.pair.white().num_cycles(),
                    pair.black().num_cycles(),
                    r.pair.black().num_cycles(),
                    ctx.chi,
                    r_chi
                ),
            )
        });

        let r_genus = r.pair.genus();
        let claimed = self.mutate(ty);
        let expected_genus = match claimed {
            TypeClass::U => ctx.genus + 1,
            TypeClass::N => ctx.genus - 1,
            _ => ctx.genus,
        };
        self.slot("reroute-theorem")
            .record(r_genus == expected_genus, || {
                ce(
                    format!("genus {expected_genus} after reroute (class {claimed})"),
                    format!("genus {r_genus}"),
                )
            });

        let prediction = predict_branch_type(pair, a, b).unwrap();
        self.coverage[prediction.rule.source.index()][prediction.rule.row.index()] += 1;
        let actual_ty = self.mutate(r.pair.classify_type(b, r.a_white).unwrap());
        self.slot("branch-tables")
            .record(prediction.predicted == actual_ty, || {
                ce(
                    format!("class {} by rule {}", prediction.predicted, prediction.rule),
                    format!("class {actual_ty} rel ({b}, {})", r.a_white),
                )
            });

        let conj = conjugate_by_transposition(pair, a, b).unwrap();
        let conj_transitive = is_transitive_oracle(&conj);
        let conj_nu = conj.product().num_cycles();
        let conj_genus = conj.genus();

        if ctx.transitive && exc == ExceptionalClass::None {
            self.slot("transitivity-theorem").record(conj_transitive, || {
                ce(
                    String::from("conjugated pair transitive (not exceptional)"),
                    String::from("conjugated pair splits"),
                )
            });
        }

        if ctx.transitive && conj_nu < ctx.nu_product {
            self.slot("fewer-cycles-transitive")
                .record(conj_transitive, || {
                    ce(
                        format!(
                            "transitive: product cycles dropped {} -> {conj_nu}",
                            ctx.nu_product
                        ),
                        String::from("conjugated pair splits"),
                    )
                });
        }

        if ctx.transitive && ctx.genus == 0 && exc != ExceptionalClass::Wild {
            let criterion = conj_nu <= ctx.nu_product;
            self.slot("sphere-criterion")
                .record(conj_transitive == criterion, || {
                    ce(
                        format!(
                            "transitive iff product cycles {} <= {}",
                            conj_nu, ctx.nu_product
                        ),
                        format!("transitive = {conj_transitive}"),
                    )
                });
        }

        let dg = conj_genus - ctx.genus;
        let effect_ok = dg.abs() <= 1
            && match effect {
                GenusEffect::Raising => dg == 1,
                GenusEffect::Lowering => dg == -1,
                GenusEffect::Preserving => dg == 0,
            };
        self.slot("genus-effect").record(effect_ok, || {
            ce(
                format!("genus change matching {effect}"),
                format!("genus {} -> {conj_genus}", ctx.genus),
            )
        });

        let dbl = double_reroute(pair, a, b).unwrap();
        let dbl_transitive = is_transitive_oracle(&dbl.pair);
        let dbl_genus = dbl.pair.genus();
        self.slot("conjugation-vs-double-reroute").record(
            conj_transitive == dbl_transitive && conj_genus == dbl_genus,
            || {
                ce(
                    format!(
                        "double reroute matching conjugation (transitive {conj_transitive}, genus {conj_genus})"
                    ),
                    format!("transitive {dbl_transitive}, genus {dbl_genus}"),
                )
            },
        );

        let (comp_wa, comp_ba, comp_wb, comp_bb) =
            ctx.model.side_components_without(a, b).unwrap();
        let two_walk = comp_wa == comp_ba || comp_wb == comp_bb;
        let wild_criterion = two_walk || comp_wa == comp_wb || comp_ba == comp_bb;
        if ctx.transitive {
            self.slot("wild-walks")
                .record(conj_transitive == wild_criterion, || {
                    ce(
                        format!("transitive iff four-walk criterion ({wild_criterion})"),
                        format!("transitive = {conj_transitive}"),
                    )
                });
            if exc.is_tame() {
                self.slot("tame-walks")
                    .record(conj_transitive == two_walk, || {
                        ce(
                            format!("transitive iff two-walk criterion ({two_walk})"),
                            format!("transitive = {conj_transitive}"),
                        )
                    });
                if conj_transitive {
                    self.tame_conj_transitive += 1;
                } else {
                    self.tame_conj_split += 1;
                }
            }
            if two_walk {
                self.slot("two-walks-imply-connected")
                    .record(conj_transitive, || {
                        ce(
                            String::from("two-walk criterion forces transitivity"),
                            String::from("conjugated pair splits"),
                        )
                    });
            }
        }

        // graph of the rerouted pair, predicted by local surgery on the model
        let mut white_parts = ctx.model.white_partition();
        let mut black_parts = ctx.model.black_partition();
        for part in white_parts.iter_mut() {
            if let Some(i) = part.iter().position(|&x| x == a) {
                part.remove(i);
                part.push(r.a_white);
            }
        }
        for part in white_parts.iter_mut() {
            if part.contains(&b) {
                part.push(r.a_black);
            }
        }
        for part in black_parts.iter_mut() {
            if let Some(i) = part.iter().position(|&x| x == a) {
                part.remove(i);
                part.push(r.a_black);
            }
        }
        black_parts.push(alloc::vec![r.a_white]);
        let normalize = |mut parts: Vec<Vec<ElementLabel>>| {
            for p in parts.iter_mut() {
                p.sort();
            }
            parts.sort();
            parts
        };
        let white_expected = normalize(white_parts);
        let black_expected = normalize(black_parts);
        let r_model = build_model(&r.pair);
        let white_actual = normalize(r_model.white_partition());
        let black_actual = normalize(r_model.black_partition());
        self.slot("model-surgery").record(
            white_expected == white_actual && black_expected == black_actual,
            || {
                ce(
                    format!("vertex edge sets {white_expected:?} / {black_expected:?}"),
                    format!("{white_actual:?} / {black_actual:?}"),
                )
            },
        );
    }

    fn into_report(self, degree: u32) -> VerificationReport {
        let checks = CHECK_NAMES
            .iter()
            .zip(self.slots)
            .map(|(name, slot)| CheckOutcome {
                name,
                checked: slot.checked,
                failed: slot.failed,
                first: slot.first,
            })
            .collect();
        VerificationReport {
            degree,
            cases_checked: self.cases,
            sampled: self.sampled,
            checks,
            branch_row_coverage: self.coverage,
            tame_conj_transitive: self.tame_conj_transitive,
            tame_conj_split: self.tame_conj_split,
        }
    }
}

/// Runs one worker's share of the full enumeration of a degree.
///
/// Pairs are distributed round-robin over `workers` by pair index; merging
/// every worker's report gives the same result as a single full run.
pub fn verify_chunk(
    degree: u32,
    worker: usize,
    workers: usize,
    options: VerifyOptions,
) -> Result<VerificationReport, Error> {
    if !(2..=5).contains(&degree) {
        return Err(Error::DegreeOutOfRange {
            degree,
            min: 2,
            max: 5,
        });
    }
    assert!(workers >= 1 && worker < workers, "bad worker split");
    let ground = GroundSet::integers(degree)?;
    let perms = all_permutations(&ground);
    let nf = perms.len() as u64;
    let n = degree as usize;
    let mut harness = Harness::new(options, false);
    for (wr, white) in perms.iter().enumerate() {
        for (br, black) in perms.iter().enumerate() {
            let pair_index = wr as u64 * nf + br as u64;
            if pair_index % workers as u64 != worker as u64 {
                continue;
            }
            let base_rank = pair_index * n as u64 * (n as u64 - 1);
            let ctx = PairCtx::new(PermutationPair::new(white.clone(), black.clone()).unwrap());
            harness.pair_checks(&ctx, base_rank);
            for a_idx in 0..n {
                for b_idx in 0..n {
                    if b_idx == a_idx {
                        continue;
                    }
                    let b_off = if b_idx < a_idx { b_idx } else { b_idx - 1 } as u64;
                    let rank = base_rank + a_idx as u64 * (n as u64 - 1) + b_off;
                    harness.tuple_checks(&ctx, ground.elem(a_idx), ground.elem(b_idx), rank);
                }
            }
        }
    }
    Ok(attach_synthetic(harness.into_report(degree)))
}

/// Full verification of every tuple of a degree.
pub fn verify_all(degree: u32, options: VerifyOptions) -> Result<VerificationReport, Error> {
    verify_chunk(degree, 0, 1, options)
}

/// Runs one worker's share of a deterministic sample of a degree.
///
/// The sampled ranks depend only on `seed` and `samples`; workers take the
/// sample indices congruent to their id, so merging every worker's report
/// gives the same result as a single run. The per-pair tree check is skipped
/// when sampling (it enumerates a whole symmetric group per pair).
pub fn verify_sampled(
    degree: u32,
    samples: u64,
    seed: u64,
    worker: usize,
    workers: usize,
    options: VerifyOptions,
) -> Result<VerificationReport, Error> {
    let count = tuple_count(degree)?;
    assert!(workers >= 1 && worker < workers, "bad worker split");
    let ground = GroundSet::integers(degree)?;
    let n = degree as usize;
    let nf = factorial(degree);
    let mut harness = Harness::new(options, true);
    let mut state = seed;
    for k in 0..samples {
        let value = splitmix64(&mut state);
        if k % workers as u64 != worker as u64 {
            continue;
        }
        let rank = ((value as u128 * count as u128) >> 64) as u64;
        let mut rest = rank;
        let b_off = (rest % (n as u64 - 1)) as usize;
        rest /= n as u64 - 1;
        let a_idx = (rest % n as u64) as usize;
        rest /= n as u64;
        let br = rest % nf;
        let wr = rest / nf;
        let white = Permutation::from_images_unchecked(
            ground.clone(),
            unrank_permutation(wr, n),
        );
        let black = Permutation::from_images_unchecked(
            ground.clone(),
            unrank_permutation(br, n),
        );
        let b_idx = if b_off < a_idx { b_off } else { b_off + 1 };
        let ctx = PairCtx::new(PermutationPair::new(white, black).unwrap());
        harness.pair_checks(&ctx, rank);
        harness.tuple_checks(&ctx, ground.elem(a_idx), ground.elem(b_idx), rank);
    }
    Ok(attach_synthetic(harness.into_report(degree)))
}

fn attach_synthetic(mut report: VerificationReport) -> VerificationReport {
    let tame_total = report.tame_conj_transitive + report.tame_conj_split;
    let ambiguity_enforced = report.degree >= 4 && !report.sampled;
    let ambiguity_ok =
        !ambiguity_enforced || (report.tame_conj_transitive > 0 && report.tame_conj_split > 0);
    report.checks.push(CheckOutcome {
        name: AMBIGUITY_CHECK,
        checked: tame_total,
        failed: u64::from(!ambiguity_ok),
        first: None,
    });
    let coverage_enforced = report.degree >= 5 && !report.sampled;
    let empty_rows = report
        .branch_row_coverage
        .iter()
        .flatten()
        .filter(|&&c| c == 0)
        .count() as u64;
    report.checks.push(CheckOutcome {
        name: COVERAGE_CHECK,
        checked: 36,
        failed: if coverage_enforced { empty_rows } else { 0 },
        first: None,
    });
    report
}

/// Merges worker reports of one run into the whole-run report.
///
/// Counts are summed, the earliest counterexample by rank is kept, and the
/// synthetic whole-run rows are recomputed from the merged counters.
pub fn merge_reports(reports: &[VerificationReport]) -> VerificationReport {
    assert!(!reports.is_empty(), "nothing to merge");
    let degree = reports[0].degree;
    let sampled = reports[0].sampled;
    let mut slots: Vec<CheckSlot> = alloc::vec![CheckSlot::default(); CHECK_NAMES.len()];
    let mut coverage = [[0u64; 6]; 6];
    let mut tame_t = 0;
    let mut tame_s = 0;
    let mut cases = 0;
    for r in reports {
        assert!(r.degree == degree && r.sampled == sampled, "mixed reports");
        cases += r.cases_checked;
        tame_t += r.tame_conj_transitive;
        tame_s += r.tame_conj_split;
        for (ci, row) in coverage.iter_mut().enumerate() {
            for (ri, cell) in row.iter_mut().enumerate() {
                *cell += r.branch_row_coverage[ci][ri];
            }
        }
        for c in &r.checks {
            if c.name == AMBIGUITY_CHECK || c.name == COVERAGE_CHECK {
                continue;
            }
            let slot = &mut slots[slot_index(c.name)];
            slot.checked += c.checked;
            slot.failed += c.failed;
            if let Some(ce) = &c.first {
                if slot.first.as_ref().map_or(true, |f| ce.rank < f.rank) {
                    slot.first = Some(ce.clone());
                }
            }
        }
    }
    let checks = CHECK_NAMES
        .iter()
        .zip(slots)
        .map(|(name, slot)| CheckOutcome {
            name,
            checked: slot.checked,
            failed: slot.failed,
            first: slot.first,
        })
        .collect();
    attach_synthetic(VerificationReport {
        degree,
        cases_checked: cases,
        sampled,
        checks,
        branch_row_coverage: coverage,
        tame_conj_transitive: tame_t,
        tame_conj_split: tame_s,
    })
}
