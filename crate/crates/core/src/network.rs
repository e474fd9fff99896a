//! Chip networks and their families of vertex-disjoint paths.
//!
//! A network is a left-to-right concatenation of elementary chips between
//! `2n + 1` vertical boundaries. Every edge is traversed right to left, from a
//! level on a chip's right boundary to a level on its left boundary. Sources
//! sit on the rightmost boundary and sinks on the leftmost.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde_json::json;
use thiserror::Error;

use crate::coeffring::{monomial_sqrt, CoeffError, Monomial, Polynomial, Sqrt2Coeff};
use crate::weyl::{CoxeterWord, Family, LabelKind, Letter, LieType, WeightLabel, WeylError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("generator {0} out of range for rank {1}")]
    GeneratorOutOfRange(usize, usize),
    #[error("letter {0} is not a level of the {1:?} scheme")]
    NotALevel(Letter, Variant),
    #[error("signed sums need a wedge label, got {0}")]
    NotAWedgeLabel(String),
    #[error("square-root sums need a spin label, got {0}")]
    NotASpinLabel(String),
    #[error("{0:?} is not a valid scheme for type {1}")]
    VariantMismatch(Variant, LieType),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// Which representation a network models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    AVector,
    BVector,
    BSpin,
    CVector,
    DVector,
}

impl Variant {
    pub fn family(self) -> Family {
        match self {
            Variant::AVector => Family::A,
            Variant::BVector | Variant::BSpin => Family::B,
            Variant::CVector => Family::C,
            Variant::DVector => Family::D,
        }
    }

    /// The vector-representation network of a type.
    pub fn vector(family: Family) -> Variant {
        match family {
            Family::A => Variant::AVector,
            Family::B => Variant::BVector,
            Family::C => Variant::CVector,
            Family::D => Variant::DVector,
        }
    }
}

/// Horizontal levels of a scheme, listed bottom to top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelScheme {
    variant: Variant,
    rank: usize,
    levels: Vec<Letter>,
}

impl LevelScheme {
    pub fn new(variant: Variant, n: usize) -> Self {
        let n_i = n as i32;
        let plain = (1..=n_i).map(Letter);
        let barred = (1..=n_i).rev().map(|i| Letter(-i));
        let levels = match variant {
            Variant::AVector => (1..=n_i + 1).map(Letter).collect(),
            Variant::BVector => plain.chain([Letter(0)]).chain(barred).collect(),
            Variant::BSpin | Variant::CVector | Variant::DVector => plain.chain(barred).collect(),
        };
        LevelScheme {
            variant,
            rank: n,
            levels,
        }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn levels(&self) -> &[Letter] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn level_of(&self, x: Letter) -> Option<usize> {
        self.levels.iter().position(|&l| l == x)
    }

    fn level(&self, x: Letter) -> usize {
        self.level_of(x).expect("letter belongs to scheme")
    }
}

/// `x_i(t)` (plain) or `x_{i-bar}(t)` (barred).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Generator {
    pub index: usize,
    pub barred: bool,
}

impl Generator {
    pub fn plain(index: usize) -> Self {
        Generator { index, barred: false }
    }

    pub fn bar(index: usize) -> Self {
        Generator { index, barred: true }
    }
}

impl std::fmt::Display for Generator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.barred {
            write!(f, "x_{}bar", self.index)
        } else {
            write!(f, "x_{}", self.index)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    /// Level index on the chip's right boundary.
    pub right: usize,
    /// Level index on the chip's left boundary.
    pub left: usize,
    pub coeff: Sqrt2Coeff,
    /// Power of the chip parameter `t`.
    pub t_power: u32,
}

impl Edge {
    pub fn is_horizontal(&self) -> bool {
        self.right == self.left
    }
}

/// One elementary chip. Edge ids `0..L` are the horizontals (id = level);
/// diagonals follow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chip {
    pub generator: Generator,
    /// Variable index substituted for `t`; `None` means `t = 1`.
    pub variable: Option<usize>,
    pub edges: Vec<Edge>,
    /// Edge pairs meeting at a point that is not a vertex.
    pub crossing_pairs: Vec<(usize, usize)>,
    /// Diagonals that a bundled family must use together or not at all.
    pub bundle_pair: Option<(usize, usize)>,
}

impl Chip {
    pub fn diagonals(&self) -> impl Iterator<Item = (usize, &Edge)> {
        self.edges.iter().enumerate().filter(|(_, e)| !e.is_horizontal())
    }
}

struct ChipBuilder<'a> {
    scheme: &'a LevelScheme,
    edges: Vec<Edge>,
    crossing_pairs: Vec<(usize, usize)>,
}

impl ChipBuilder<'_> {
    fn diag(&mut self, from: i32, to: i32, coeff: Sqrt2Coeff, t_power: u32) -> usize {
        self.edges.push(Edge {
            right: self.scheme.level(Letter(from)),
            left: self.scheme.level(Letter(to)),
            coeff,
            t_power,
        });
        self.edges.len() - 1
    }

    fn t(&mut self, from: i32, to: i32) -> usize {
        self.diag(from, to, Sqrt2Coeff::one(), 1)
    }

    /// The diagonal passes through the middle of the horizontal at `level`.
    fn crosses(&mut self, diagonal: usize, level: i32) {
        let h = self.scheme.level(Letter(level));
        self.crossing_pairs.push((diagonal, h));
    }
}

pub fn build_chip(scheme: &LevelScheme, generator: Generator) -> Result<Chip, NetworkError> {
    let n = scheme.rank();
    if generator.index == 0 || generator.index > n {
        return Err(NetworkError::GeneratorOutOfRange(generator.index, n));
    }
    let mut b = ChipBuilder {
        scheme,
        edges: (0..scheme.len())
            .map(|l| Edge {
                right: l,
                left: l,
                coeff: Sqrt2Coeff::one(),
                t_power: 0,
            })
            .collect(),
        crossing_pairs: Vec::new(),
    };
    let i = generator.index as i32;
    let n = n as i32;
    let mut bundle_pair = None;
    let variant = scheme.variant();
    if variant == Variant::AVector {
        if generator.barred {
            b.t(i, i + 1);
        } else {
            b.t(i + 1, i);
        }
    } else if i < n {
        let pair = if generator.barred {
            (b.t(i, i + 1), b.t(-(i + 1), -i))
        } else {
            (b.t(i + 1, i), b.t(-i, -(i + 1)))
        };
        if matches!(variant, Variant::DVector | Variant::BSpin) {
            bundle_pair = Some(pair);
        }
    } else {
        match (variant, generator.barred) {
            (Variant::DVector, false) => {
                let d1 = b.t(-n, n - 1);
                b.crosses(d1, n);
                let d2 = b.t(-(n - 1), n);
                b.crosses(d2, -n);
                bundle_pair = Some((d1, d2));
            }
            (Variant::DVector, true) => {
                let d1 = b.t(n - 1, -n);
                b.crosses(d1, n);
                let d2 = b.t(n, -(n - 1));
                b.crosses(d2, -n);
                bundle_pair = Some((d1, d2));
            }
            (Variant::BVector, barred) => {
                let s = if barred { -1 } else { 1 };
                // barred: n -> 0 -> n-bar; plain: n-bar -> 0 -> n
                b.diag(-s * n, 0, Sqrt2Coeff::sqrt2(), 1);
                b.diag(0, s * n, Sqrt2Coeff::sqrt2(), 1);
                let long = b.diag(-s * n, s * n, Sqrt2Coeff::one(), 2);
                b.crosses(long, 0);
            }
            (Variant::BSpin, false) => {
                b.diag(-n, n, Sqrt2Coeff::one(), 2);
            }
            (Variant::BSpin, true) => {
                b.diag(n, -n, Sqrt2Coeff::one(), 2);
            }
            (Variant::CVector, false) => {
                b.t(-n, n);
            }
            (Variant::CVector, true) => {
                b.t(n, -n);
            }
            (Variant::AVector, _) => unreachable!(),
        }
    }
    Ok(Chip {
        generator,
        variable: if generator.barred { None } else { Some(generator.index) },
        edges: b.edges,
        crossing_pairs: b.crossing_pairs,
        bundle_pair,
    })
}

/// The concatenation `x_{i1-bar}(1) ... x_{in-bar}(1) x_{in}(t_in) ... x_{i1}(t_i1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredNetwork {
    scheme: LevelScheme,
    chips: Vec<Chip>,
}

pub fn build_network(variant: Variant, n: usize, c: &CoxeterWord) -> Result<LayeredNetwork, NetworkError> {
    let ty = LieType::new(variant.family(), n)?;
    let c = CoxeterWord::for_type(ty, c.entries().to_vec())?;
    let scheme = LevelScheme::new(variant, n);
    let mut chips = Vec::with_capacity(2 * n);
    for &i in c.entries() {
        chips.push(build_chip(&scheme, Generator::bar(i))?);
    }
    for &i in c.entries().iter().rev() {
        chips.push(build_chip(&scheme, Generator::plain(i))?);
    }
    Ok(LayeredNetwork { scheme, chips })
}

impl LayeredNetwork {
    pub fn scheme(&self) -> &LevelScheme {
        &self.scheme
    }

    pub fn chips(&self) -> &[Chip] {
        &self.chips
    }

    pub fn rank(&self) -> usize {
        self.scheme.rank()
    }

    /// Number of vertical boundaries (`chips + 1`).
    pub fn boundaries(&self) -> usize {
        self.chips.len() + 1
    }

    fn label_mask(&self, label: &WeightLabel) -> Result<u64, NetworkError> {
        let mut mask = 0u64;
        for &x in label.letters() {
            let l = self
                .scheme
                .level_of(x)
                .ok_or(NetworkError::NotALevel(x, self.scheme.variant()))?;
            mask |= 1 << l;
        }
        Ok(mask)
    }
}

/// A path: its source level and the edge it takes in each chip, left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    pub source: usize,
    pub sink: usize,
    pub edges: Vec<usize>,
    /// Level at each boundary, left to right.
    pub levels: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathFamily {
    /// One path per source, ordered by source level.
    pub paths: Vec<Path>,
    pub monomial: Monomial,
    pub coeff: Sqrt2Coeff,
    pub crossings: usize,
    /// Occupied levels at each boundary, left to right.
    occupied: Vec<u64>,
}

impl PathFamily {
    /// Edges used in each chip, `(chip, edge_id)` sorted.
    pub fn chip_edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .paths
            .iter()
            .flat_map(|p| p.edges.iter().enumerate().map(|(c, &e)| (c, e)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn occupied_levels(&self, boundary: usize) -> Vec<usize> {
        mask_levels(self.occupied[boundary])
    }

    /// Sign of the source-to-sink matching with both sides in level order.
    pub fn permutation_sign(&self) -> i32 {
        let sinks: Vec<usize> = self.paths.iter().map(|p| p.sink).collect();
        let inversions = (0..sinks.len())
            .flat_map(|a| (a + 1..sinks.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| sinks[a] > sinks[b])
            .count();
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_vertex_disjoint(&self) -> bool {
        let boundaries = self.occupied.len();
        (0..boundaries).all(|b| {
            let mut seen = BTreeSet::new();
            self.paths.iter().all(|p| seen.insert(p.levels[b]))
        })
    }
}

fn mask_levels(mask: u64) -> Vec<usize> {
    (0..64).filter(|l| mask & (1 << l) != 0).collect()
}

/// A local move through one chip for every occupied right-hand level.
#[derive(Debug, Clone)]
struct Transition {
    left: u64,
    /// (right level, edge id) for each occupied right level.
    moves: Vec<(usize, usize)>,
    crossings: usize,
}

fn chip_transitions(chip: &Chip, right: u64, bundled: bool) -> Vec<Transition> {
    let occupied = mask_levels(right);
    let mut out = Vec::new();
    let mut moves = Vec::with_capacity(occupied.len());
    extend_transitions(chip, &occupied, 0, 0, &mut moves, &mut out);
    out.retain(|t| {
        if let (true, Some((a, b))) = (bundled, chip.bundle_pair) {
            let uses = |e: usize| t.moves.iter().any(|&(_, m)| m == e);
            uses(a) == uses(b)
        } else {
            true
        }
    });
    for t in &mut out {
        let used = |e: usize| t.moves.iter().any(|&(_, m)| m == e);
        t.crossings = chip.crossing_pairs.iter().filter(|&&(a, b)| used(a) && used(b)).count();
    }
    out
}

fn extend_transitions(
    chip: &Chip,
    occupied: &[usize],
    idx: usize,
    left: u64,
    moves: &mut Vec<(usize, usize)>,
    out: &mut Vec<Transition>,
) {
    if idx == occupied.len() {
        out.push(Transition {
            left,
            moves: moves.clone(),
            crossings: 0,
        });
        return;
    }
    let r = occupied[idx];
    for (id, e) in chip.edges.iter().enumerate() {
        if e.right != r || left & (1 << e.left) != 0 {
            continue;
        }
        moves.push((r, id));
        extend_transitions(chip, occupied, idx + 1, left | (1 << e.left), moves, out);
        moves.pop();
    }
}

/// All families of vertex-disjoint paths from the label's levels on the right
/// boundary to the same levels on the left boundary.
///
/// With `bundled`, each chip carrying a bundle pair uses both of its paired
/// diagonals or neither. Families are ordered lexicographically by their
/// occupied-level sets at each boundary (left to right), ties broken by edges.
pub fn enumerate_families(
    net: &LayeredNetwork,
    label: &WeightLabel,
    bundled: bool,
) -> Result<Vec<PathFamily>, NetworkError> {
    let target = net.label_mask(label)?;
    let k = label.letters().len();
    let nchips = net.chips.len();
    let nlevels = net.scheme.len();

    let states: Vec<u64> = (0u64..(1 << nlevels))
        .filter(|m| m.count_ones() as usize == k)
        .collect();
    // live[b]: masks at boundary b that can still reach the target at boundary 0
    let mut live: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); nchips + 1];
    live[0].insert(target);
    let mut transitions: Vec<std::collections::HashMap<u64, Vec<Transition>>> = vec![Default::default(); nchips];
    for c in 0..nchips {
        for &s in &states {
            let ts: Vec<Transition> = chip_transitions(&net.chips[c], s, bundled)
                .into_iter()
                .filter(|t| live[c].contains(&t.left))
                .collect();
            if !ts.is_empty() {
                live[c + 1].insert(s);
                transitions[c].insert(s, ts);
            }
        }
    }
    if !live[nchips].contains(&target) {
        return Ok(Vec::new());
    }

    let mut families = Vec::new();
    let mut stack: Vec<&Transition> = Vec::with_capacity(nchips);
    walk(net, &transitions, target, nchips, &mut stack, &mut families);
    families.sort_by(|a, b| {
        let ka: Vec<Vec<usize>> = (0..=nchips).map(|i| a.occupied_levels(i)).collect();
        let kb: Vec<Vec<usize>> = (0..=nchips).map(|i| b.occupied_levels(i)).collect();
        ka.cmp(&kb).then_with(|| a.chip_edges().cmp(&b.chip_edges()))
    });
    Ok(families)
}

fn walk<'a>(
    net: &LayeredNetwork,
    transitions: &'a [std::collections::HashMap<u64, Vec<Transition>>],
    state: u64,
    boundary: usize,
    stack: &mut Vec<&'a Transition>,
    out: &mut Vec<PathFamily>,
) {
    if boundary == 0 {
        out.push(assemble(net, stack));
        return;
    }
    let chip = boundary - 1;
    if let Some(ts) = transitions[chip].get(&state) {
        for t in ts {
            stack.push(t);
            walk(net, transitions, t.left, chip, stack, out);
            stack.pop();
        }
    }
}

// `stack[j]` is the transition through chip `nchips - 1 - j`.
fn assemble(net: &LayeredNetwork, stack: &[&Transition]) -> PathFamily {
    let nchips = net.chips.len();
    let rank = net.rank();
    let mut occupied = vec![0u64; nchips + 1];
    let first = stack[0];
    occupied[nchips] = first.moves.iter().fold(0, |m, &(r, _)| m | 1 << r);
    // trace each path from its source leftwards
    let mut paths: Vec<Path> = first
        .moves
        .iter()
        .map(|&(r, _)| {
            let mut levels = vec![usize::MAX; nchips + 1];
            levels[nchips] = r;
            Path {
                source: r,
                sink: r,
                edges: vec![usize::MAX; nchips],
                levels,
            }
        })
        .collect();
    let mut current: Vec<usize> = paths.iter().map(|p| p.source).collect();
    let mut monomial = Monomial::one(rank);
    let mut coeff = Sqrt2Coeff::one();
    let mut crossings = 0;
    for (j, t) in stack.iter().enumerate() {
        let c = nchips - 1 - j;
        let chip = &net.chips[c];
        crossings += t.crossings;
        occupied[c] = t.left;
        for (p, lvl) in paths.iter_mut().zip(current.iter_mut()) {
            let &(_, e) = t.moves.iter().find(|&&(r, _)| r == *lvl).expect("path continues");
            let edge = &chip.edges[e];
            p.edges[c] = e;
            p.levels[c] = edge.left;
            *lvl = edge.left;
            coeff = &coeff * &edge.coeff;
            if let (Some(v), true) = (chip.variable, edge.t_power > 0) {
                monomial.mul_var(v, edge.t_power);
            }
        }
    }
    for (p, lvl) in paths.iter_mut().zip(current) {
        p.sink = lvl;
    }
    PathFamily {
        paths,
        monomial,
        coeff,
        crossings,
        occupied,
    }
}

/// Weight (monomial, coefficient) and crossing count of a family.
pub fn family_weight(net: &LayeredNetwork, fam: &PathFamily) -> (Monomial, Sqrt2Coeff, usize) {
    let mut monomial = Monomial::one(net.rank());
    let mut coeff = Sqrt2Coeff::one();
    let mut used = BTreeSet::new();
    for p in &fam.paths {
        for (c, &e) in p.edges.iter().enumerate() {
            let chip = &net.chips[c];
            let edge = &chip.edges[e];
            coeff = &coeff * &edge.coeff;
            if let (Some(v), true) = (chip.variable, edge.t_power > 0) {
                monomial.mul_var(v, edge.t_power);
            }
            used.insert((c, e));
        }
    }
    let crossings = net
        .chips
        .iter()
        .enumerate()
        .map(|(c, chip)| {
            chip.crossing_pairs
                .iter()
                .filter(|&&(a, b)| used.contains(&(c, a)) && used.contains(&(c, b)))
                .count()
        })
        .sum();
    (monomial, coeff, crossings)
}

/// Sum of signed weights, `(-1)^crossings * weight`, over unbundled families.
pub fn signed_sum(net: &LayeredNetwork, label: &WeightLabel) -> Result<Polynomial, NetworkError> {
    if label.kind() != LabelKind::Wedge {
        return Err(NetworkError::NotAWedgeLabel(label.to_string()));
    }
    Ok(signed_sum_of(net.rank(), &enumerate_families(net, label, false)?))
}

pub fn signed_sum_of(rank: usize, families: &[PathFamily]) -> Polynomial {
    let mut p = Polynomial::zero(rank);
    for f in families {
        let c = if f.crossings % 2 == 0 {
            f.coeff.clone()
        } else {
            -f.coeff.clone()
        };
        p.add_term(f.monomial.clone(), c);
    }
    p
}

/// Sum of square roots of weights over bundled families.
pub fn spin_sum(net: &LayeredNetwork, label: &WeightLabel) -> Result<Polynomial, NetworkError> {
    if !label.is_spin() {
        return Err(NetworkError::NotASpinLabel(label.to_string()));
    }
    spin_sum_of(net.rank(), &enumerate_families(net, label, true)?)
}

pub fn spin_sum_of(rank: usize, families: &[PathFamily]) -> Result<Polynomial, NetworkError> {
    let mut p = Polynomial::zero(rank);
    for f in families {
        let (m, c) = monomial_sqrt(&f.monomial, &f.coeff)?;
        p.add_term(m, c);
    }
    Ok(p)
}

fn edge_label(chip: &Chip, e: &Edge) -> String {
    let coeff = if e.coeff.is_one() {
        String::new()
    } else if e.coeff == Sqrt2Coeff::sqrt2() {
        "sqrt(2)".to_string()
    } else {
        e.coeff.to_string().replace("sqrt2", "sqrt(2)")
    };
    let var = match (chip.variable, e.t_power) {
        (_, 0) | (None, _) => String::new(),
        (Some(v), 1) => format!("t{}", v),
        (Some(v), p) => format!("t{}^{}", v, p),
    };
    match (coeff.is_empty(), var.is_empty()) {
        (true, true) => "1".to_string(),
        (false, true) => coeff,
        (true, false) => var,
        (false, false) => format!("{}*{}", coeff, var),
    }
}

/// Graphviz rendering: one `rank=same` subgraph per boundary, edge labels are
/// weights, and the edges of `highlight` are drawn bold.
pub fn export_dot(net: &LayeredNetwork, highlight: Option<&PathFamily>) -> String {
    let used: BTreeSet<(usize, usize)> = highlight
        .map(|f| f.chip_edges().into_iter().collect())
        .unwrap_or_default();
    let levels = net.scheme.levels();
    let mut s = String::new();
    s.push_str("digraph network {\n  rankdir=LR;\n  node [shape=point];\n");
    for b in 0..net.boundaries() {
        let _ = writeln!(s, "  subgraph col{} {{\n    rank=same;", b);
        for (l, x) in levels.iter().enumerate() {
            let _ = writeln!(s, "    b{}_l{} [xlabel=\"{}\"];", b, l, x);
        }
        s.push_str("  }\n");
    }
    for (c, chip) in net.chips.iter().enumerate() {
        let _ = writeln!(s, "  // chip {}: {}", c, chip.generator);
        for (id, e) in chip.edges.iter().enumerate() {
            let bold = if used.contains(&(c, id)) {
                ", style=bold, penwidth=3"
            } else {
                ""
            };
            let _ = writeln!(
                s,
                "  b{}_l{} -> b{}_l{} [label=\"{}\"{}];",
                c + 1,
                e.right,
                c,
                e.left,
                edge_label(chip, e),
                bold
            );
        }
    }
    s.push_str("}\n");
    s
}

/// `{"label": [...], "families": [{"weight": .., "crossings": k, "edges": [[chip, edge], ..]}]}`.
pub fn families_json(label: &WeightLabel, families: &[PathFamily]) -> serde_json::Value {
    let fams: Vec<serde_json::Value> = families
        .iter()
        .map(|f| {
            let w = Polynomial::term(f.monomial.clone(), f.coeff.clone());
            json!({
                "weight": w,
                "crossings": f.crossings,
                "edges": f.chip_edges().into_iter().map(|(c, e)| [c, e]).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "label": label.letters().iter().map(|x| x.0).collect::<Vec<_>>(),
        "families": fams,
    })
}
