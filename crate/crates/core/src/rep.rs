//! Symbolic action of `x_i(t)` and `x_{i-bar}(t)` on fundamental
//! representations, and principal minors as matrix coefficients.
//!
//! This is an independent route to the same polynomials the path networks
//! compute: no chip or path is consulted here.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use thiserror::Error;

use crate::coeffring::{Polynomial, Sqrt2Coeff};
use crate::network::Generator;
use crate::weyl::{CoxeterWord, Family, LabelKind, Letter, LieType, WeightLabel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("label {label} does not live in the {repr:?} representation")]
    LabelMismatch { label: String, repr: Representation },
    #[error("coefficient {0} not divisible by {1}! in the exponential series")]
    InexactSeries(String, u32),
    #[error("coxeter word {0} does not match {1}")]
    WordMismatch(String, LieType),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    E,
    F,
}

/// Exterior powers of the standard representation, or a spin representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    Exterior(LieType),
    Spin(LieType),
}

impl Representation {
    pub fn lie_type(&self) -> LieType {
        match *self {
            Representation::Exterior(t) | Representation::Spin(t) => t,
        }
    }

    /// The representation holding the extremal weight vector of `label`.
    pub fn for_label(ty: LieType, label: &WeightLabel) -> Representation {
        if label.is_spin() {
            Representation::Spin(ty)
        } else {
            Representation::Exterior(ty)
        }
    }
}

/// A wedge `v_{i1} ^ ... ^ v_{ik}` or a spin basis element, letters in level order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisVector {
    Wedge(Vec<Letter>),
    Spin(Vec<Letter>),
}

impl BasisVector {
    pub fn from_label(label: &WeightLabel) -> BasisVector {
        match label.kind() {
            LabelKind::Wedge => BasisVector::Wedge(label.letters().to_vec()),
            LabelKind::Spin(_) => BasisVector::Spin(label.letters().to_vec()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicVector {
    rank: usize,
    entries: BTreeMap<BasisVector, Polynomial>,
}

impl SymbolicVector {
    pub fn zero(rank: usize) -> Self {
        SymbolicVector {
            rank,
            entries: BTreeMap::new(),
        }
    }

    pub fn basis(rank: usize, b: BasisVector) -> Self {
        let mut v = Self::zero(rank);
        v.add(b, Polynomial::one(rank));
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn coefficient(&self, b: &BasisVector) -> Polynomial {
        self.entries
            .get(b)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.rank))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&BasisVector, &Polynomial)> {
        self.entries.iter()
    }

    pub fn add(&mut self, b: BasisVector, p: Polynomial) {
        if p.is_zero() {
            return;
        }
        let slot = self
            .entries
            .entry(b.clone())
            .or_insert_with(|| Polynomial::zero(self.rank));
        *slot = slot.checked_add(&p).expect("same rank");
        if slot.is_zero() {
            self.entries.remove(&b);
        }
    }
}

/// Image of `v_j` under `e_i` or `f_i` on the standard representation.
pub fn generator_on_standard(ty: LieType, which: Which, i: usize, j: Letter) -> Vec<(Letter, Sqrt2Coeff)> {
    let n = ty.rank() as i32;
    let i = i as i32;
    let j = j.0;
    let one = |x: i32| vec![(Letter(x), Sqrt2Coeff::one())];
    let root2 = |x: i32| vec![(Letter(x), Sqrt2Coeff::sqrt2())];
    if ty.family() == Family::A {
        return match which {
            Which::E if j == i + 1 => one(i),
            Which::F if j == i => one(i + 1),
            _ => vec![],
        };
    }
    if i < n {
        return match which {
            Which::E if j == i + 1 => one(i),
            Which::E if j == -i => one(-(i + 1)),
            Which::F if j == i => one(i + 1),
            Which::F if j == -(i + 1) => one(-i),
            _ => vec![],
        };
    }
    match (ty.family(), which) {
        (Family::D, Which::E) if j == -(n - 1) => one(n),
        (Family::D, Which::E) if j == -n => one(n - 1),
        (Family::D, Which::F) if j == n - 1 => one(-n),
        (Family::D, Which::F) if j == n => one(-(n - 1)),
        (Family::B, Which::E) if j == 0 => root2(n),
        (Family::B, Which::E) if j == -n => root2(0),
        (Family::B, Which::F) if j == n => root2(0),
        (Family::B, Which::F) if j == 0 => root2(-n),
        (Family::C, Which::E) if j == -n => one(n),
        (Family::C, Which::F) if j == n => one(-n),
        _ => vec![],
    }
}

/// `e_i` or `f_i` on a spin basis element; `None` for zero.
pub fn generator_on_spin(ty: LieType, which: Which, i: usize, t: &[Letter]) -> Option<Vec<Letter>> {
    let n = ty.rank() as i32;
    let i = i as i32;
    let swap = |remove: [i32; 2], insert: [i32; 2]| -> Option<Vec<Letter>> {
        if !remove.iter().all(|r| t.contains(&Letter(*r))) {
            return None;
        }
        let mut out: Vec<Letter> = t.iter().copied().filter(|x| !remove.contains(&x.0)).collect();
        out.extend(insert.iter().map(|&x| Letter(x)));
        out.sort();
        Some(out)
    };
    if i < n {
        return match which {
            Which::E => swap([i + 1, -i], [i, -(i + 1)]),
            Which::F => swap([i, -(i + 1)], [i + 1, -i]),
        };
    }
    match (ty.family(), which) {
        (Family::D, Which::E) => swap([-n, -(n - 1)], [n - 1, n]),
        (Family::D, Which::F) => swap([n - 1, n], [-n, -(n - 1)]),
        (Family::B, which) => {
            let (from, to) = if which == Which::E { (-n, n) } else { (n, -n) };
            if !t.contains(&Letter(from)) {
                return None;
            }
            let mut out: Vec<Letter> = t.iter().map(|&x| if x.0 == from { Letter(to) } else { x }).collect();
            out.sort();
            Some(out)
        }
        _ => None,
    }
}

fn which_of(g: Generator) -> Which {
    if g.barred {
        Which::F
    } else {
        Which::E
    }
}

/// `exp(t * g)` applied to `v_j`: terms `(letter, coefficient, power of t)`.
///
/// The series stops once a power of the generator kills `v_j`; the `1/k!`
/// factors are divided out exactly.
pub fn group_generator_on_standard(
    ty: LieType,
    gen: Generator,
    j: Letter,
) -> Result<Vec<(Letter, Sqrt2Coeff, u32)>, RepError> {
    let which = which_of(gen);
    let mut out = vec![(j, Sqrt2Coeff::one(), 0)];
    let mut cur = vec![(j, Sqrt2Coeff::one())];
    let mut factorial = BigInt::from(1);
    let mut k = 0u32;
    loop {
        let next: Vec<(Letter, Sqrt2Coeff)> = cur
            .iter()
            .flat_map(|(x, c)| {
                generator_on_standard(ty, which, gen.index, *x)
                    .into_iter()
                    .map(move |(y, d)| (y, c * &d))
            })
            .collect();
        if next.is_empty() {
            return Ok(out);
        }
        k += 1;
        factorial *= k;
        for (y, c) in &next {
            let q = c
                .div_exact(&factorial)
                .ok_or_else(|| RepError::InexactSeries(c.to_string(), k))?;
            out.push((*y, q, k));
        }
        cur = next;
    }
}

fn spin_series(ty: LieType, gen: Generator, t: &[Letter]) -> Result<Vec<(Vec<Letter>, Sqrt2Coeff, u32)>, RepError> {
    let which = which_of(gen);
    let mut out = vec![(t.to_vec(), Sqrt2Coeff::one(), 0)];
    let mut cur = t.to_vec();
    let mut factorial = BigInt::from(1);
    let mut k = 0u32;
    while let Some(next) = generator_on_spin(ty, which, gen.index, &cur) {
        k += 1;
        factorial *= k;
        let q = Sqrt2Coeff::one()
            .div_exact(&factorial)
            .ok_or_else(|| RepError::InexactSeries("1".into(), k))?;
        out.push((next.clone(), q, k));
        cur = next;
    }
    Ok(out)
}

/// Sorts letters into level order; returns the permutation sign, or `None`
/// if a letter repeats (the wedge vanishes).
fn sort_with_sign(letters: &mut [Letter]) -> Option<i32> {
    let mut sign = 1;
    for a in 1..letters.len() {
        let mut b = a;
        while b > 0 && letters[b - 1] > letters[b] {
            letters.swap(b - 1, b);
            sign = -sign;
            b -= 1;
        }
    }
    if letters.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(sign)
}

/// Applies `x_i(param)` (or `x_{i-bar}(param)`) to `v`.
///
/// On exterior powers the group element acts factor by factor; on spin
/// representations it acts by its exponential series on the basis set.
pub fn apply_group_generator(
    repr: Representation,
    gen: Generator,
    param: &Polynomial,
    v: &SymbolicVector,
) -> Result<SymbolicVector, RepError> {
    let ty = repr.lie_type();
    let rank = v.rank;
    let mut powers: Vec<Polynomial> = vec![Polynomial::one(rank)];
    let mut power = |k: u32| -> Polynomial {
        while powers.len() <= k as usize {
            let next = powers.last().unwrap().checked_mul(param).expect("same rank");
            powers.push(next);
        }
        powers[k as usize].clone()
    };
    let mut out = SymbolicVector::zero(rank);
    for (b, coeff) in &v.entries {
        match (repr, b) {
            (Representation::Exterior(_), BasisVector::Wedge(letters)) => {
                let images = letters
                    .iter()
                    .map(|&x| group_generator_on_standard(ty, gen, x))
                    .collect::<Result<Vec<_>, _>>()?;
                let mut choice = Vec::with_capacity(letters.len());
                let mut acc = Vec::new();
                expand_wedge(&images, 0, &mut choice, &mut acc);
                for (mut ls, c, k) in acc {
                    let Some(sign) = sort_with_sign(&mut ls) else { continue };
                    let c = if sign < 0 { -c } else { c };
                    let term = power(k).scale(&c).checked_mul(coeff).expect("same rank");
                    out.add(BasisVector::Wedge(ls), term);
                }
            }
            (Representation::Spin(_), BasisVector::Spin(letters)) => {
                for (t, c, k) in spin_series(ty, gen, letters)? {
                    let term = power(k).scale(&c).checked_mul(coeff).expect("same rank");
                    out.add(BasisVector::Spin(t), term);
                }
            }
            _ => {
                return Err(RepError::LabelMismatch {
                    label: format!("{:?}", b),
                    repr,
                });
            }
        }
    }
    Ok(out)
}

type WedgeTerm = (Vec<Letter>, Sqrt2Coeff, u32);

fn expand_wedge(
    images: &[Vec<(Letter, Sqrt2Coeff, u32)>],
    idx: usize,
    choice: &mut Vec<(Letter, Sqrt2Coeff, u32)>,
    out: &mut Vec<WedgeTerm>,
) {
    if idx == images.len() {
        let letters = choice.iter().map(|(x, _, _)| *x).collect();
        let coeff = choice.iter().fold(Sqrt2Coeff::one(), |acc, (_, c, _)| &acc * c);
        let k = choice.iter().map(|(_, _, k)| k).sum();
        out.push((letters, coeff, k));
        return;
    }
    for term in &images[idx] {
        if choice.iter().any(|(x, _, _)| *x == term.0) {
            continue;
        }
        choice.push(term.clone());
        expand_wedge(images, idx + 1, choice, out);
        choice.pop();
    }
}

/// The sequence of group elements making up
/// `x_{i1-bar}(1) ... x_{in-bar}(1) x_{in}(t_in) ... x_{i1}(t_i1)`,
/// in the order they act on a vector (rightmost first).
pub fn coxeter_factors(c: &CoxeterWord) -> Vec<Generator> {
    let mut out: Vec<Generator> = c.entries().iter().map(|&i| Generator::plain(i)).collect();
    out.extend(c.entries().iter().rev().map(|&i| Generator::bar(i)));
    out
}

/// Coefficient of `v_label` in `x_c . v_label`.
pub fn principal_minor(repr: Representation, c: &CoxeterWord, label: &WeightLabel) -> Result<Polynomial, RepError> {
    let ty = repr.lie_type();
    if c.rank() != ty.rank() {
        return Err(RepError::WordMismatch(c.to_string(), ty));
    }
    let fits = matches!(
        (repr, label.kind()),
        (Representation::Exterior(_), LabelKind::Wedge) | (Representation::Spin(_), LabelKind::Spin(_))
    );
    if !fits {
        return Err(RepError::LabelMismatch {
            label: label.to_string(),
            repr,
        });
    }
    let n = ty.rank();
    let start = BasisVector::from_label(label);
    let mut v = SymbolicVector::basis(n, start.clone());
    for g in coxeter_factors(c) {
        let param = if g.barred {
            Polynomial::one(n)
        } else {
            Polynomial::var(n, g.index)
        };
        v = apply_group_generator(repr, g, &param, &v)?;
    }
    Ok(v.coefficient(&start))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::SpinVariant;

    fn ty(f: Family, n: usize) -> LieType {
        LieType::new(f, n).unwrap()
    }

    fn l(x: i32) -> Letter {
        Letter(x)
    }

    #[test]
    fn standard_generator_examples() {
        let d4 = ty(Family::D, 4);
        assert_eq!(
            generator_on_standard(d4, Which::E, 4, l(-4)),
            vec![(l(3), Sqrt2Coeff::one())]
        );
        let b3 = ty(Family::B, 3);
        assert_eq!(
            generator_on_standard(b3, Which::F, 3, l(3)),
            vec![(l(0), Sqrt2Coeff::sqrt2())]
        );
        let c3 = ty(Family::C, 3);
        assert_eq!(
            generator_on_standard(c3, Which::E, 3, l(-3)),
            vec![(l(3), Sqrt2Coeff::one())]
        );
        assert!(generator_on_standard(c3, Which::E, 3, l(3)).is_empty());
    }

    #[test]
    fn group_generator_examples() {
        let b2 = ty(Family::B, 2);
        let img = group_generator_on_standard(b2, Generator::plain(2), l(-2)).unwrap();
        assert_eq!(
            img,
            vec![
                (l(-2), Sqrt2Coeff::one(), 0),
                (l(0), Sqrt2Coeff::sqrt2(), 1),
                (l(2), Sqrt2Coeff::one(), 2)
            ]
        );
        let a3 = ty(Family::A, 3);
        assert_eq!(
            group_generator_on_standard(a3, Generator::plain(1), l(1)).unwrap(),
            vec![(l(1), Sqrt2Coeff::one(), 0)]
        );
        let d4 = ty(Family::D, 4);
        assert_eq!(
            group_generator_on_standard(d4, Generator::bar(4), l(4)).unwrap(),
            vec![(l(4), Sqrt2Coeff::one(), 0), (l(-3), Sqrt2Coeff::one(), 1)]
        );
    }

    #[test]
    fn wedge_action_example() {
        // SL3: x_1(t) (v2 ^ v3) = v2 ^ v3 + t v1 ^ v3
        let a2 = ty(Family::A, 2);
        let v = SymbolicVector::basis(2, BasisVector::Wedge(vec![l(2), l(3)]));
        let out = apply_group_generator(
            Representation::Exterior(a2),
            Generator::plain(1),
            &Polynomial::var(2, 1),
            &v,
        )
        .unwrap();
        assert_eq!(
            out.coefficient(&BasisVector::Wedge(vec![l(2), l(3)])),
            Polynomial::one(2)
        );
        assert_eq!(
            out.coefficient(&BasisVector::Wedge(vec![l(1), l(3)])),
            Polynomial::var(2, 1)
        );
        assert_eq!(out.entries().count(), 2);
    }

    #[test]
    fn spin_action_example() {
        let b3 = ty(Family::B, 3);
        let v = SymbolicVector::basis(3, BasisVector::Spin(vec![l(1), l(2), l(3)]));
        let out =
            apply_group_generator(Representation::Spin(b3), Generator::bar(3), &Polynomial::var(3, 3), &v).unwrap();
        assert_eq!(
            out.coefficient(&BasisVector::Spin(vec![l(1), l(2), l(3)])),
            Polynomial::one(3)
        );
        assert_eq!(
            out.coefficient(&BasisVector::Spin(vec![l(1), l(2), l(-3)])),
            Polynomial::var(3, 3)
        );
    }

    #[test]
    fn zero_vector_stays_zero() {
        let d4 = ty(Family::D, 4);
        let z = SymbolicVector::zero(4);
        for g in [Generator::plain(2), Generator::bar(4)] {
            let out = apply_group_generator(Representation::Exterior(d4), g, &Polynomial::var(4, 2), &z).unwrap();
            assert!(out.is_zero());
        }
    }

    #[test]
    fn wedge_sign_from_sorting() {
        // x_4(t) (v_4bar ^ v_3bar) contains t v_4bar ^ v_4 = -t v_4 ^ v_4bar
        let d4 = ty(Family::D, 4);
        let v = SymbolicVector::basis(4, BasisVector::Wedge(vec![l(-4), l(-3)]));
        let out = apply_group_generator(
            Representation::Exterior(d4),
            Generator::plain(4),
            &Polynomial::var(4, 4),
            &v,
        )
        .unwrap();
        assert_eq!(
            out.coefficient(&BasisVector::Wedge(vec![l(4), l(-4)])),
            Polynomial::var(4, 4).neg()
        );
    }

    #[test]
    fn minor_examples() {
        let a3 = ty(Family::A, 3);
        let c = CoxeterWord::new(vec![1, 3, 2]).unwrap();
        let label = WeightLabel::new(a3, LabelKind::Wedge, vec![l(2), l(4)]).unwrap();
        let p = principal_minor(Representation::Exterior(a3), &c, &label).unwrap();
        assert_eq!(p.to_string(), "1 + t1 + t3 + t1*t3 + t1*t2*t3");

        let b2 = ty(Family::B, 2);
        let c = CoxeterWord::new(vec![2, 1]).unwrap();
        let label = WeightLabel::new(b2, LabelKind::Spin(SpinVariant::B), vec![l(-1), l(-2)]).unwrap();
        let p = principal_minor(Representation::Spin(b2), &c, &label).unwrap();
        assert_eq!(p.to_string(), "1 + t2 + t1*t2");

        let top = crate::weyl::fundamental_label(b2, 1).unwrap();
        assert_eq!(
            principal_minor(Representation::Exterior(b2), &c, &top).unwrap(),
            Polynomial::one(2)
        );
    }

    #[test]
    fn minor_rejects_mismatched_label() {
        let d4 = ty(Family::D, 4);
        let c = CoxeterWord::natural(4);
        let spin = crate::weyl::fundamental_label(d4, 4).unwrap();
        assert!(principal_minor(Representation::Exterior(d4), &c, &spin).is_err());
        assert!(principal_minor(Representation::Exterior(d4), &CoxeterWord::natural(3), &spin).is_err());
    }

    type Matrix = std::collections::BTreeMap<(Letter, Letter), Sqrt2Coeff>;

    fn matrix(t: LieType, which: Which, i: usize) -> Matrix {
        let mut m = Matrix::new();
        for j in t.alphabet() {
            for (x, c) in generator_on_standard(t, which, i, j) {
                m.insert((x, j), c);
            }
        }
        m
    }

    fn compose(a: &Matrix, b: &Matrix) -> Matrix {
        let mut out = Matrix::new();
        for (&(r, k), x) in a {
            for (&(k2, col), y) in b {
                if k == k2 {
                    let e = out.entry((r, col)).or_insert_with(Sqrt2Coeff::zero);
                    *e += &(x * y);
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
        let mut out = compose(a, b);
        for (k, c) in compose(b, a) {
            let e = out.entry(k).or_insert_with(Sqrt2Coeff::zero);
            *e += &(-c);
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn sweep_types() -> Vec<LieType> {
        vec![
            ty(Family::A, 3),
            ty(Family::B, 3),
            ty(Family::C, 3),
            ty(Family::D, 4),
            ty(Family::D, 5),
        ]
    }

    #[test]
    fn e_and_f_are_transposes() {
        for t in sweep_types() {
            for i in 1..=t.rank() {
                let e = matrix(t, Which::E, i);
                let f: Matrix = matrix(t, Which::F, i)
                    .into_iter()
                    .map(|((r, c), x)| ((c, r), x))
                    .collect();
                assert_eq!(e, f, "{} i={}", t, i);
            }
        }
    }

    #[test]
    fn chevalley_commutators() {
        for t in sweep_types() {
            for i in 1..=t.rank() {
                for j in 1..=t.rank() {
                    let h = commutator(&matrix(t, Which::E, i), &matrix(t, Which::F, j));
                    if i == j {
                        assert!(!h.is_empty() && h.keys().all(|(r, c)| r == c), "{} i={}", t, i);
                        assert!(h.values().all(Sqrt2Coeff::is_integer));
                    } else {
                        assert!(h.is_empty(), "{} [e{}, f{}] = {:?}", t, i, j, h);
                    }
                }
            }
        }
    }

    #[test]
    fn spin_e_and_f_are_inverse_swaps() {
        for (t, k) in [(ty(Family::B, 3), 3), (ty(Family::D, 4), 3), (ty(Family::D, 4), 4)] {
            let base = crate::weyl::fundamental_label(t, k).unwrap();
            let c = CoxeterWord::natural(t.rank());
            for m in 0..=t.coxeter_number() {
                let s = crate::weyl::coxeter_apply(t, &c, &base, m);
                for i in 1..=t.rank() {
                    if let Some(up) = generator_on_spin(t, Which::E, i, s.letters()) {
                        assert_eq!(generator_on_spin(t, Which::F, i, &up).as_deref(), Some(s.letters()));
                    }
                }
            }
        }
    }

    #[test]
    fn one_parameter_subgroups_compose() {
        let d4 = ty(Family::D, 4);
        let b3 = ty(Family::B, 3);
        let cases = [
            (
                Representation::Exterior(d4),
                crate::weyl::fundamental_label(d4, 2).unwrap(),
                Generator::plain(4),
            ),
            (
                Representation::Exterior(b3),
                crate::weyl::fundamental_label(b3, 1).unwrap(),
                Generator::plain(3),
            ),
            (
                Representation::Spin(b3),
                crate::weyl::fundamental_label(b3, 3).unwrap(),
                Generator::plain(3),
            ),
            (
                Representation::Spin(d4),
                crate::weyl::fundamental_label(d4, 3).unwrap(),
                Generator::bar(2),
            ),
        ];
        for (repr, label, gen) in cases {
            let t_ = repr.lie_type();
            let rank = t_.rank();
            let t = Polynomial::var(rank, 1);
            let s = Polynomial::var(rank, 2);
            let c = CoxeterWord::natural(rank);
            let moved = (0..=t_.coxeter_number())
                .map(|m| crate::weyl::coxeter_apply(t_, &c, &label, m))
                .map(|l| SymbolicVector::basis(rank, BasisVector::from_label(&l)))
                .find(|v| apply_group_generator(repr, gen, &t, v).unwrap().entries().count() > 1)
                .expect("some orbit vector is moved");
            let ts =
                apply_group_generator(repr, gen, &s, &apply_group_generator(repr, gen, &t, &moved).unwrap()).unwrap();
            let sum = apply_group_generator(repr, gen, &t.checked_add(&s).unwrap(), &moved).unwrap();
            assert_eq!(ts, sum, "{:?} {}", repr, gen);
        }
    }
}
