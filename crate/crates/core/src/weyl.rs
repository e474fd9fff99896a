//! Weyl groups of classical type acting on index letters as (signed) permutations.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("type {family}{rank} is not defined (minimum rank {min})")]
    RankTooSmall { family: Family, rank: usize, min: usize },
    #[error("unknown type family {0:?}")]
    UnknownFamily(String),
    #[error("letter {letter} is outside the alphabet of {ty}")]
    LetterOutOfRange { letter: Letter, ty: LieType },
    #[error("simple reflection index {0} out of range for {1}")]
    IndexOutOfRange(usize, LieType),
    #[error("coxeter word {0:?} is not a permutation of 1..={1}")]
    NotAPermutation(Vec<usize>, usize),
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("invalid label {letters:?}: {reason}")]
    InvalidLabel { letters: Vec<Letter>, reason: String },
    #[error("no m <= {bound} with c^m * {base} = w0 * {base}")]
    HeightNotFound { base: String, bound: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = WeylError;
    fn from_str(s: &str) -> Result<Self, WeylError> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(WeylError::UnknownFamily(other.to_string())),
        }
    }
}

impl Family {
    pub fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieType {
    family: Family,
    rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self, WeylError> {
        let min = family.min_rank();
        if rank < min {
            return Err(WeylError::RankTooSmall { family, rank, min });
        }
        Ok(LieType { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn coxeter_number(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n + 1,
            Family::B | Family::C => 2 * n,
            Family::D => 2 * n - 2,
        }
    }

    /// Letters the Weyl group permutes. Type A uses 1..=n+1; the others use
    /// 1..=n and their bars, plus 0 for type B.
    pub fn alphabet(&self) -> Vec<Letter> {
        let n = self.rank as i32;
        match self.family {
            Family::A => (1..=n + 1).map(Letter).collect(),
            Family::B => (1..=n)
                .map(Letter)
                .chain([Letter(0)])
                .chain((1..=n).rev().map(|i| Letter(-i)))
                .collect(),
            Family::C | Family::D => (1..=n).map(Letter).chain((1..=n).rev().map(|i| Letter(-i))).collect(),
        }
    }

    pub fn contains(&self, x: Letter) -> bool {
        let n = self.rank as i32;
        match self.family {
            Family::A => (1..=n + 1).contains(&x.0),
            Family::B => x.0.abs() <= n,
            Family::C | Family::D => x.0 != 0 && x.0.abs() <= n,
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// An index letter: `i` for positive values, `i-bar` for `-i`, and `0`.
///
/// The ordering is the level order `1 < 2 < ... < 0 < ... < 2-bar < 1-bar`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter(pub i32);

impl Letter {
    pub fn bar(i: usize) -> Letter {
        Letter(-(i as i32))
    }

    pub fn plain(i: usize) -> Letter {
        Letter(i as i32)
    }

    pub fn is_barred(self) -> bool {
        self.0 < 0
    }

    pub fn index(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn negate(self) -> Letter {
        Letter(-self.0)
    }

    fn order_key(self) -> (u8, i32) {
        match self.0.cmp(&0) {
            Ordering::Greater => (0, self.0),
            Ordering::Equal => (1, 0),
            Ordering::Less => (2, self.0),
        }
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Letter {
    type Err = WeylError;
    fn from_str(s: &str) -> Result<Self, WeylError> {
        s.trim()
            .parse::<i32>()
            .map(Letter)
            .map_err(|_| WeylError::Parse(s.to_string()))
    }
}

/// `c = s_{i1} ... s_{in}` given by its index sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterWord(Vec<usize>);

impl CoxeterWord {
    pub fn new(entries: Vec<usize>) -> Result<Self, WeylError> {
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for &i in &entries {
            if i == 0 || i > n || seen[i] {
                return Err(WeylError::NotAPermutation(entries, n));
            }
            seen[i] = true;
        }
        Ok(CoxeterWord(entries))
    }

    /// Validates against the rank as well as permutation-ness.
    pub fn for_type(ty: LieType, entries: Vec<usize>) -> Result<Self, WeylError> {
        if entries.len() != ty.rank() {
            return Err(WeylError::NotAPermutation(entries, ty.rank()));
        }
        Self::new(entries)
    }

    pub fn natural(n: usize) -> Self {
        CoxeterWord((1..=n).collect())
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for CoxeterWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for CoxeterWord {
    type Err = WeylError;
    fn from_str(s: &str) -> Result<Self, WeylError> {
        let entries = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| WeylError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        CoxeterWord::new(entries)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpinVariant {
    /// Type B, highest weight omega_n.
    B,
    /// Type D, omega_{n-1}: odd number of barred letters.
    DOdd,
    /// Type D, omega_n: even number of barred letters.
    DEven,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LabelKind {
    Wedge,
    Spin(SpinVariant),
}

/// Index set of an extremal weight, kept sorted in level order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightLabel {
    kind: LabelKind,
    letters: Vec<Letter>,
}

impl WeightLabel {
    pub fn new(ty: LieType, kind: LabelKind, mut letters: Vec<Letter>) -> Result<Self, WeylError> {
        letters.sort();
        let invalid = |reason: &str| WeylError::InvalidLabel {
            letters: letters.clone(),
            reason: reason.into(),
        };
        if letters.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid("repeated letter"));
        }
        for &x in &letters {
            if !ty.contains(x) {
                return Err(WeylError::LetterOutOfRange { letter: x, ty });
            }
            if x.0 == 0 {
                return Err(invalid("0 is not an extremal-weight letter"));
            }
            if ty.family() != Family::A && letters.contains(&x.negate()) {
                return Err(invalid("contains both i and i-bar"));
            }
        }
        if let LabelKind::Spin(v) = kind {
            if letters.len() != ty.rank() {
                return Err(invalid("spin labels have exactly n letters"));
            }
            let bars = letters.iter().filter(|x| x.is_barred()).count();
            let ok = match (v, ty.family()) {
                (SpinVariant::B, Family::B) => true,
                (SpinVariant::DOdd, Family::D) => bars % 2 == 1,
                (SpinVariant::DEven, Family::D) => bars % 2 == 0,
                _ => return Err(invalid("spin variant does not match the type")),
            };
            if !ok {
                return Err(invalid("wrong parity of barred letters"));
            }
        }
        Ok(WeightLabel { kind, letters })
    }

    pub fn kind(&self) -> LabelKind {
        self.kind
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_spin(&self) -> bool {
        matches!(self.kind, LabelKind::Spin(_))
    }

    fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> WeightLabel {
        let mut letters: Vec<Letter> = self.letters.iter().map(|&x| f(x)).collect();
        letters.sort();
        WeightLabel {
            kind: self.kind,
            letters,
        }
    }
}

impl fmt::Display for WeightLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub fn simple_reflection(ty: LieType, i: usize, x: Letter) -> Result<Letter, WeylError> {
    let n = ty.rank();
    if i == 0 || i > n {
        return Err(WeylError::IndexOutOfRange(i, ty));
    }
    if !ty.contains(x) {
        return Err(WeylError::LetterOutOfRange { letter: x, ty });
    }
    Ok(reflect(ty, i, x))
}

// Unchecked; callers guarantee range.
fn reflect(ty: LieType, i: usize, x: Letter) -> Letter {
    let n = ty.rank() as i32;
    let i = i as i32;
    let v = x.0;
    if ty.family() == Family::A || i < n {
        // (i, i+1) and, away from type A, (i+1-bar, i-bar)
        return Letter(match v {
            _ if v == i => i + 1,
            _ if v == i + 1 => i,
            _ if v == -i && ty.family() != Family::A => -(i + 1),
            _ if v == -(i + 1) && ty.family() != Family::A => -i,
            _ => v,
        });
    }
    match ty.family() {
        Family::B | Family::C => Letter(if v.abs() == n { -v } else { v }),
        Family::D => Letter(match v {
            _ if v == n - 1 => -n,
            _ if v == -n => n - 1,
            _ if v == n => -(n - 1),
            _ if v == -(n - 1) => n,
            _ => v,
        }),
        Family::A => unreachable!(),
    }
}

/// One application of `c = s_{i1} ... s_{in}` to a letter: `s_{in}` acts first.
pub fn coxeter_letter(ty: LieType, c: &CoxeterWord, x: Letter) -> Letter {
    c.entries().iter().rev().fold(x, |acc, &i| reflect(ty, i, acc))
}

pub fn coxeter_apply(ty: LieType, c: &CoxeterWord, label: &WeightLabel, m: usize) -> WeightLabel {
    let mut out = label.clone();
    for _ in 0..m {
        out = out.map_letters(|x| coxeter_letter(ty, c, x));
    }
    out
}

/// Action of the longest Weyl group element on a label.
pub fn w0_label(ty: LieType, label: &WeightLabel) -> WeightLabel {
    let n = ty.rank() as i32;
    match ty.family() {
        Family::A => label.map_letters(|x| Letter(n + 2 - x.0)),
        Family::B | Family::C => label.map_letters(Letter::negate),
        Family::D if n % 2 == 0 => label.map_letters(Letter::negate),
        // bar everything, then swap n with n-bar
        Family::D => label.map_letters(|x| if x.0.abs() == n { x } else { x.negate() }),
    }
}

/// Smallest `m >= 1` with `c^m * base = w0 * base`.
pub fn height(ty: LieType, c: &CoxeterWord, base: &WeightLabel) -> Result<usize, WeylError> {
    let target = w0_label(ty, base);
    let bound = ty.coxeter_number();
    let mut cur = base.clone();
    for m in 1..=bound {
        cur = coxeter_apply(ty, c, &cur, 1);
        if cur == target {
            return Ok(m);
        }
    }
    Err(WeylError::HeightNotFound {
        base: base.to_string(),
        bound,
    })
}

/// Label of the highest weight omega_k.
pub fn fundamental_label(ty: LieType, k: usize) -> Result<WeightLabel, WeylError> {
    let n = ty.rank();
    if k == 0 || k > n {
        return Err(WeylError::IndexOutOfRange(k, ty));
    }
    let first = |j: usize| (1..=j).map(Letter::plain).collect::<Vec<_>>();
    match (ty.family(), k) {
        (Family::D, k) if k == n - 1 => {
            let mut l = first(n - 1);
            l.push(Letter::bar(n));
            WeightLabel::new(ty, LabelKind::Spin(SpinVariant::DOdd), l)
        }
        (Family::D, k) if k == n => WeightLabel::new(ty, LabelKind::Spin(SpinVariant::DEven), first(n)),
        (Family::B, k) if k == n => WeightLabel::new(ty, LabelKind::Spin(SpinVariant::B), first(n)),
        _ => WeightLabel::new(ty, LabelKind::Wedge, first(k)),
    }
}
