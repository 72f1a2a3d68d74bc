//! Inversion sequences, reduction-based pattern containment, the statistics
//! `dist`/`max`/`prmx`/`rank`, and a pruned backtracking enumerator.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::count_table::{CountKey, CountTable};
use crate::error::{Error, Result};

/// An integer sequence `e_1 .. e_n` with `0 <= e_j <= j - 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct InversionSequence(Vec<u32>);

impl InversionSequence {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        for (j, &value) in entries.iter().enumerate() {
            if value as usize > j {
                return Err(Error::NotInversionSequence {
                    position: j + 1,
                    value,
                    bound: j,
                });
            }
        }
        Ok(Self(entries))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of distinct entries.
    pub fn dist(&self) -> usize {
        self.0.iter().collect::<BTreeSet<_>>().len()
    }

    /// Largest entry, or -1 for the empty sequence.
    pub fn max_value(&self) -> i64 {
        self.0.iter().max().map_or(-1, |&v| v as i64)
    }

    /// Position (1-based) of the first descent, reading `e_{n+1} = -1`.
    /// Zero for the empty sequence.
    pub fn prmx(&self) -> usize {
        let e = &self.0;
        (0..e.len())
            .find(|&i| i + 1 == e.len() || e[i] > e[i + 1])
            .map_or(0, |i| i + 1)
    }

    /// `prmx - max - 1`; only defined on 102-avoiding sequences.
    pub fn rank(&self) -> Result<usize> {
        if self.is_empty() {
            return Ok(0);
        }
        if contains(self, &PatternWord::p102()) {
            return Err(Error::RankUndefined);
        }
        let r = self.prmx() as i64 - self.max_value() - 1;
        usize::try_from(r).map_err(|_| Error::Invariant(format!("negative rank {r} on {self}")))
    }

    pub fn stats(&self) -> StatRecord {
        StatRecord {
            dist: self.dist(),
            maxval: self.max_value(),
            prmx: self.prmx(),
            rank: self.rank().ok(),
        }
    }

    pub fn contains(&self, w: &PatternWord) -> bool {
        contains(self, w)
    }

    pub fn avoids_all(&self, patterns: &[PatternWord]) -> bool {
        patterns.iter().all(|w| !contains(self, w))
    }
}

impl TryFrom<Vec<u32>> for InversionSequence {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<InversionSequence> for Vec<u32> {
    fn from(e: InversionSequence) -> Self {
        e.0
    }
}

impl fmt::Display for InversionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Statistics of a sequence. `rank` is `None` when the sequence contains 102.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatRecord {
    pub dist: usize,
    pub maxval: i64,
    pub prmx: usize,
    pub rank: Option<usize>,
}

/// A reduced word used as an avoidance pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PatternWord(Vec<u32>);

impl PatternWord {
    /// Accepts only words that are already reduced.
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        if reduce_letters(&letters) != letters {
            return Err(Error::NotReduced(letters));
        }
        Ok(Self(letters))
    }

    /// Parses a word written as a string of digits, e.g. `"102"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let letters = s
            .chars()
            .map(|c| c.to_digit(10).ok_or_else(|| Error::BadPattern(s.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(letters).map_err(|e| match e {
            Error::EmptyWord => Error::BadPattern(s.to_string()),
            other => other,
        })
    }

    /// Parses a comma separated list such as `"102,000"`.
    pub fn parse_list(s: &str) -> Result<Vec<Self>> {
        s.split(',').map(Self::parse).collect()
    }

    pub fn p102() -> Self {
        Self(vec![1, 0, 2])
    }

    pub fn p000() -> Self {
        Self(vec![0, 0, 0])
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of distinct letters.
    fn alphabet(&self) -> usize {
        self.0.iter().max().map_or(0, |&m| m as usize + 1)
    }
}

impl fmt::Display for PatternWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let separated = self.0.iter().any(|&l| l > 9);
        for (i, l) in self.0.iter().enumerate() {
            if separated && i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

fn reduce_letters(word: &[u32]) -> Vec<u32> {
    let distinct: Vec<u32> = word.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    word.iter()
        .map(|v| distinct.binary_search(v).expect("value is present") as u32)
        .collect()
}

/// Replaces the i-th smallest distinct value by `i - 1`.
pub fn reduction(word: &[u32]) -> Result<PatternWord> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(PatternWord(reduce_letters(word)))
}

/// True iff some subsequence of `e` reduces to `w`.
pub fn contains(e: &InversionSequence, w: &PatternWord) -> bool {
    let e = e.entries();
    if e.len() < w.len() {
        return false;
    }
    let mut assign = vec![None; w.alphabet()];
    match_from(e, w.letters(), 0, 0, e.len(), &mut assign)
}

/// True iff `w` occurs in `e` with its last letter at index `last` (0-based).
/// Any occurrence in a prefix is caught by an earlier call with a smaller `last`.
pub fn occurs_ending_at(e: &[u32], w: &PatternWord, last: usize) -> bool {
    let k = w.len();
    if last + 1 < k {
        return false;
    }
    let letters = w.letters();
    let mut assign = vec![None; w.alphabet()];
    assign[letters[k - 1] as usize] = Some(e[last]);
    match_from(e, &letters[..k - 1], 0, 0, last, &mut assign)
}

fn compatible(assign: &[Option<u32>], letter: usize, v: u32) -> bool {
    if let Some(a) = assign[letter] {
        return a == v;
    }
    assign.iter().enumerate().all(|(l, a)| match a {
        None => true,
        Some(a) => (l < letter && *a < v) || (l > letter && *a > v),
    })
}

// Assigns pattern positions `p..` to indices in `start..end`, keeping the
// letter -> value map injective and order preserving.
fn match_from(e: &[u32], letters: &[u32], p: usize, start: usize, end: usize, assign: &mut [Option<u32>]) -> bool {
    if p == letters.len() {
        return true;
    }
    let remaining = letters.len() - p;
    let letter = letters[p] as usize;
    for i in start..end {
        if end - i < remaining {
            break;
        }
        let v = e[i];
        if !compatible(assign, letter, v) {
            continue;
        }
        let fresh = assign[letter].is_none();
        assign[letter] = Some(v);
        let found = match_from(e, letters, p + 1, i + 1, end, assign);
        if fresh {
            assign[letter] = None;
        }
        if found {
            return true;
        }
    }
    false
}

/// Optional restriction on `dist` and `rank` for the enumerator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StatFilter {
    pub dist: Option<usize>,
    pub rank: Option<usize>,
}

impl StatFilter {
    pub fn accepts(&self, e: &InversionSequence) -> bool {
        if let Some(m) = self.dist {
            if e.dist() != m {
                return false;
            }
        }
        match self.rank {
            Some(t) => e.rank().is_ok_and(|r| r == t),
            None => true,
        }
    }
}

/// Lexicographic stream of the inversion sequences of length `n` avoiding
/// every pattern and accepted by the filter.
///
/// Each newly placed entry is tested only against occurrences ending at its
/// own position; a prefix containing a pattern is never extended.
pub struct Avoiders {
    n: usize,
    patterns: Vec<PatternWord>,
    filter: StatFilter,
    prefix: Vec<u32>,
    cursor: Vec<u32>,
    done: bool,
}

impl Avoiders {
    pub fn new(n: usize, patterns: &[PatternWord], filter: StatFilter) -> Self {
        Self {
            n,
            patterns: patterns.to_vec(),
            filter,
            prefix: Vec::with_capacity(n),
            cursor: vec![0; n + 1],
            done: false,
        }
    }

    fn admissible(&self) -> bool {
        let last = self.prefix.len() - 1;
        if self.patterns.iter().any(|w| occurs_ending_at(&self.prefix, w, last)) {
            return false;
        }
        if let Some(m) = self.filter.dist {
            let d = self.prefix.iter().collect::<BTreeSet<_>>().len();
            if d > m || d + (self.n - self.prefix.len()) < m {
                return false;
            }
        }
        true
    }
}

impl Iterator for Avoiders {
    type Item = InversionSequence;

    fn next(&mut self) -> Option<InversionSequence> {
        if self.done {
            return None;
        }
        if self.n == 0 {
            self.done = true;
            let e = InversionSequence::empty();
            return self.filter.accepts(&e).then_some(e);
        }
        loop {
            let j = self.prefix.len();
            if j == self.n {
                let e = InversionSequence(self.prefix.clone());
                self.prefix.pop();
                if self.filter.accepts(&e) {
                    return Some(e);
                }
                continue;
            }
            let mut placed = false;
            let mut v = self.cursor[j];
            while v as usize <= j {
                self.prefix.push(v);
                if self.admissible() {
                    self.cursor[j] = v + 1;
                    placed = true;
                    break;
                }
                self.prefix.pop();
                v += 1;
            }
            if placed {
                self.cursor[j + 1] = 0;
                continue;
            }
            self.cursor[j] = 0;
            if j == 0 {
                self.done = true;
                return None;
            }
            self.prefix.pop();
        }
    }
}

pub fn enumerate_avoiding(n: usize, patterns: &[PatternWord], filter: StatFilter) -> Avoiders {
    Avoiders::new(n, patterns, filter)
}

/// Exact counts keyed by `(n, dist, rank)` for every `n <= n_max`.
/// The rank slot is left empty for sequences on which rank is undefined.
pub fn count_table(n_max: usize, patterns: &[PatternWord]) -> CountTable {
    let per_length: Vec<CountTable> = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let mut table = CountTable::new();
            for e in Avoiders::new(n, patterns, StatFilter::default()) {
                let key = CountKey::full(n as u32, e.dist() as u32, e.rank().ok().map(|t| t as u32));
                table.add(key, &BigInt::from(1));
            }
            table
        })
        .collect();
    per_length.into_iter().fold(CountTable::new(), |mut acc, t| {
        acc.merge(&t);
        acc
    })
}

/// Deletes the first copy of a doubled maximum from a rank-0 sequence.
pub fn remark_dedup(e: &InversionSequence) -> Result<InversionSequence> {
    if e.rank()? != 0 {
        return Err(Error::RemarkRequiresRankZero);
    }
    if e.is_empty() {
        return Ok(e.clone());
    }
    let max = e.max_value() as u32;
    match e.entries().iter().filter(|&&v| v == max).count() {
        1 => Ok(e.clone()),
        2 => {
            let q = e.prmx();
            let mut out = e.entries().to_vec();
            out.remove(q - 1);
            InversionSequence::new(out).map_err(|err| Error::Invariant(format!("deleting position {q} of {e}: {err}")))
        }
        c => Err(Error::Invariant(format!("maximum of {e} occurs {c} times"))),
    }
}
