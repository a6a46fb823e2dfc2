//! Free-group words on the two generators `h2`, `h3`.
//!
//! Words are stored as syllables `(generator, exponent)`. Cyclic canonical
//! forms use the letter order `h2 < h2^-1 < h3 < h3^-1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::Error;

/// An element of `supp(alpha) = {1, h2, h3}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Letter {
    Identity,
    H2,
    H3,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::Identity, Letter::H2, Letter::H3];

    pub fn generator(self) -> Option<Gen> {
        match self {
            Letter::Identity => None,
            Letter::H2 => Some(Gen::H2),
            Letter::H3 => Some(Gen::H3),
        }
    }

    pub fn word(self) -> Word {
        match self.generator() {
            Some(g) => Word::gen(g, 1),
            None => Word::identity(),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::Identity => "1",
            Letter::H2 => "h2",
            Letter::H3 => "h3",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Gen {
    H2,
    H3,
}

impl Gen {
    pub fn other(self) -> Gen {
        match self {
            Gen::H2 => Gen::H3,
            Gen::H3 => Gen::H2,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

/// A freely reduced word. Adjacent syllables always carry distinct generators
/// and no exponent is zero.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    syl: Vec<(Gen, i32)>,
}

/// Freely reduce an arbitrary syllable sequence.
pub fn reduce(raw: &[(Gen, i32)]) -> Word {
    let mut out: Vec<(Gen, i32)> = Vec::with_capacity(raw.len());
    for &(g, e) in raw {
        if e == 0 {
            continue;
        }
        match out.last_mut() {
            Some(last) if last.0 == g => {
                last.1 += e;
                if last.1 == 0 {
                    out.pop();
                }
            }
            _ => out.push((g, e)),
        }
    }
    Word { syl: out }
}

impl Word {
    pub fn identity() -> Word {
        Word { syl: Vec::new() }
    }

    pub fn gen(g: Gen, e: i32) -> Word {
        reduce(&[(g, e)])
    }

    pub fn syllables(&self) -> &[(Gen, i32)] {
        &self.syl
    }

    pub fn is_identity(&self) -> bool {
        self.syl.is_empty()
    }

    /// Length in letters.
    pub fn len(&self) -> usize {
        self.syl.iter().map(|s| s.1.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.syl.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word { syl: self.syl.iter().rev().map(|&(g, e)| (g, -e)).collect() }
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut raw = self.syl.clone();
        raw.extend_from_slice(&other.syl);
        reduce(&raw)
    }

    pub fn pow(&self, k: i32) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut raw = Vec::with_capacity(base.syl.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            raw.extend_from_slice(&base.syl);
        }
        reduce(&raw)
    }

    /// Exponent sums `(h2, h3)`.
    pub fn exponent_sums(&self) -> [i64; 2] {
        let mut s = [0i64; 2];
        for &(g, e) in &self.syl {
            s[g.index()] += e as i64;
        }
        s
    }

    /// Letter codes: h2 = 0, h2^-1 = 1, h3 = 2, h3^-1 = 3.
    pub fn letters(&self) -> Vec<u8> {
        let mut v = Vec::with_capacity(self.len());
        for &(g, e) in &self.syl {
            let c = 2 * g as u8 + (e < 0) as u8;
            v.extend(std::iter::repeat(c).take(e.unsigned_abs() as usize));
        }
        v
    }

    pub fn from_letters(codes: &[u8]) -> Word {
        let raw: Vec<(Gen, i32)> = codes
            .iter()
            .map(|&c| {
                let g = if c < 2 { Gen::H2 } else { Gen::H3 };
                (g, if c % 2 == 0 { 1 } else { -1 })
            })
            .collect();
        reduce(&raw)
    }

    /// Strip conjugating letters until first and last letters are not mutually inverse.
    pub fn cyclic_reduce(&self) -> Word {
        let mut s = self.syl.clone();
        loop {
            if s.len() >= 2 {
                let (g0, e0) = s[0];
                let (gl, el) = s[s.len() - 1];
                if g0 == gl {
                    // merge the two ends into a single syllable at the front
                    s.pop();
                    let e = e0 + el;
                    if e == 0 {
                        s.remove(0);
                        continue;
                    }
                    s[0].1 = e;
                    return Word { syl: s };
                }
            }
            return Word { syl: s };
        }
    }

    /// Cyclically reduced, least rotation in letter order.
    pub fn cyclic_canonical(&self) -> Word {
        let w = self.cyclic_reduce();
        let l = w.letters();
        if l.is_empty() {
            return w;
        }
        let n = l.len();
        let mut best = 0;
        for r in 1..n {
            for i in 0..n {
                let a = l[(r + i) % n];
                let b = l[(best + i) % n];
                if a != b {
                    if a < b {
                        best = r;
                    }
                    break;
                }
            }
        }
        let rot: Vec<u8> = (0..n).map(|i| l[(best + i) % n]).collect();
        // rotation may split a syllable across the ends; keep it linear
        let raw: Vec<(Gen, i32)> = rot
            .iter()
            .map(|&c| (if c < 2 { Gen::H2 } else { Gen::H3 }, if c % 2 == 0 { 1 } else { -1 }))
            .collect();
        reduce(&raw)
    }

    /// Canonical form of the relation `w = 1`, identifying `w` with `w^-1`.
    pub fn relation_key(&self) -> Word {
        let a = self.cyclic_canonical();
        let b = self.inverse().cyclic_canonical();
        if a.letters() <= b.letters() {
            a
        } else {
            b
        }
    }

    /// Relation key that also identifies the generator swap `h2 <-> h3`.
    pub fn relation_key_swap(&self) -> Word {
        let a = self.relation_key();
        let b = self.swap().relation_key();
        if a.letters() <= b.letters() {
            a
        } else {
            b
        }
    }

    pub fn swap(&self) -> Word {
        Word { syl: self.syl.iter().map(|&(g, e)| (g.other(), e)).collect() }
    }

    /// Replace each generator by a word.
    pub fn substitute(&self, h2: &Word, h3: &Word) -> Word {
        let mut raw = Vec::new();
        for &(g, e) in &self.syl {
            let img = match g {
                Gen::H2 => h2,
                Gen::H3 => h3,
            };
            let base = if e < 0 { img.inverse() } else { img.clone() };
            for _ in 0..e.unsigned_abs() {
                raw.extend_from_slice(&base.syl);
            }
        }
        reduce(&raw)
    }

    /// Occurrences (in letters) of a generator.
    pub fn occurrences(&self, g: Gen) -> usize {
        self.syl.iter().filter(|s| s.0 == g).map(|s| s.1.unsigned_abs() as usize).sum()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syl.is_empty() {
            return f.write_str("1");
        }
        for (i, &(g, e)) in self.syl.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let name = match g {
                Gen::H2 => "h2",
                Gen::H3 => "h3",
            };
            if e == 1 {
                f.write_str(name)?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Word, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && (self.s[self.pos] == b' ' || self.s[self.pos] == b'*') {
            self.pos += 1;
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {} of {:?}", self.pos, String::from_utf8_lossy(self.s)))
    }

    fn exponent(&mut self) -> Result<i32, Error> {
        self.skip_ws();
        if self.pos >= self.s.len() || self.s[self.pos] != b'^' {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let braced = self.s.get(self.pos) == Some(&b'{');
        if braced {
            self.pos += 1;
        }
        let start = self.pos;
        if matches!(self.s.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let e: i32 = std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("bad exponent"))?;
        if braced {
            if self.s.get(self.pos) != Some(&b'}') {
                return Err(self.err("expected '}'"));
            }
            self.pos += 1;
        }
        Ok(e)
    }

    fn sequence(&mut self) -> Result<Word, Error> {
        let mut acc = Word::identity();
        loop {
            self.skip_ws();
            let atom = match self.s.get(self.pos) {
                None | Some(b')') => return Ok(acc),
                Some(b'(') => {
                    self.pos += 1;
                    let inner = self.sequence()?;
                    if self.s.get(self.pos) != Some(&b')') {
                        return Err(self.err("expected ')'"));
                    }
                    self.pos += 1;
                    inner
                }
                Some(b'1') => {
                    self.pos += 1;
                    Word::identity()
                }
                Some(b'h') => {
                    self.pos += 1;
                    if self.s.get(self.pos) == Some(&b'_') {
                        self.pos += 1;
                    }
                    let g = match self.s.get(self.pos) {
                        Some(b'2') => Gen::H2,
                        Some(b'3') => Gen::H3,
                        _ => return Err(self.err("expected h2 or h3")),
                    };
                    self.pos += 1;
                    Word::gen(g, 1)
                }
                Some(_) => return Err(self.err("unexpected character")),
            };
            let e = self.exponent()?;
            acc = acc.mul(&atom.pow(e));
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Grammar: juxtaposed atoms `h2`, `h3`, `1` or `( ... )`, each with an
    /// optional `^k` (also `^{k}`). Spaces and `*` separate atoms.
    fn from_str(s: &str) -> Result<Word, Error> {
        let mut p = Parser { s: s.trim().as_bytes(), pos: 0 };
        let w = p.sequence()?;
        if p.pos != p.s.len() {
            return Err(p.err("unbalanced ')'"));
        }
        Ok(w)
    }
}

/// A two-generator presentation; relators are kept cyclically canonical,
/// nonempty and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Presentation {
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new<I: IntoIterator<Item = Word>>(rels: I) -> Presentation {
        let mut relators: Vec<Word> = rels
            .into_iter()
            .map(|w| w.relation_key())
            .filter(|w| !w.is_identity())
            .collect();
        relators.sort_by_key(|a| a.letters());
        relators.dedup();
        Presentation { relators }
    }

    pub fn total_len(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    pub fn map(&self, f: impl Fn(&Word) -> Word) -> Presentation {
        Presentation::new(self.relators.iter().map(f))
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<h2, h3 | ")?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str(">")
    }
}

impl FromStr for Presentation {
    type Err = Error;

    /// Relators separated by commas or semicolons.
    fn from_str(s: &str) -> Result<Presentation, Error> {
        let rels = s
            .split([',', ';'])
            .filter(|t| !t.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Word>, _>>()?;
        Ok(Presentation::new(rels))
    }
}

/// Elementary Nielsen substitutions on `{h2, h3}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TietzeMove {
    /// `g -> g * other^e`
    RightMul(Gen, i8),
    /// `g -> other^e * g`
    LeftMul(Gen, i8),
    /// `g -> g^-1`
    Invert(Gen),
}

impl TietzeMove {
    pub const ALL: [TietzeMove; 10] = [
        TietzeMove::RightMul(Gen::H2, 1),
        TietzeMove::RightMul(Gen::H2, -1),
        TietzeMove::RightMul(Gen::H3, 1),
        TietzeMove::RightMul(Gen::H3, -1),
        TietzeMove::LeftMul(Gen::H2, 1),
        TietzeMove::LeftMul(Gen::H2, -1),
        TietzeMove::LeftMul(Gen::H3, 1),
        TietzeMove::LeftMul(Gen::H3, -1),
        TietzeMove::Invert(Gen::H2),
        TietzeMove::Invert(Gen::H3),
    ];

    /// Images of `(h2, h3)`.
    pub fn images(self) -> (Word, Word) {
        let (g, img) = match self {
            TietzeMove::RightMul(g, e) => (g, Word::gen(g, 1).mul(&Word::gen(g.other(), e as i32))),
            TietzeMove::LeftMul(g, e) => (g, Word::gen(g.other(), e as i32).mul(&Word::gen(g, 1))),
            TietzeMove::Invert(g) => (g, Word::gen(g, -1)),
        };
        match g {
            Gen::H2 => (img, Word::gen(Gen::H3, 1)),
            Gen::H3 => (Word::gen(Gen::H2, 1), img),
        }
    }

    pub fn inverse(self) -> TietzeMove {
        match self {
            TietzeMove::RightMul(g, e) => TietzeMove::RightMul(g, -e),
            TietzeMove::LeftMul(g, e) => TietzeMove::LeftMul(g, -e),
            TietzeMove::Invert(g) => TietzeMove::Invert(g),
        }
    }

    pub fn apply(self, w: &Word) -> Word {
        let (a, b) = self.images();
        w.substitute(&a, &b)
    }
}

impl fmt::Display for TietzeMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.images();
        match self {
            TietzeMove::RightMul(Gen::H2, _) | TietzeMove::LeftMul(Gen::H2, _) | TietzeMove::Invert(Gen::H2) => {
                write!(f, "h2 -> {a}")
            }
            _ => write!(f, "h3 -> {b}"),
        }
    }
}

pub fn tietze_substitute(p: &Presentation, mv: TietzeMove) -> Presentation {
    p.map(|w| mv.apply(w))
}
