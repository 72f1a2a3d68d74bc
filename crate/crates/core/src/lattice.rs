//! Labeled F-paths, weighted H-walks and simple H-paths.
//!
//! Paths are stored as step lists starting at the origin; lattice points are
//! recomputed when needed. The map [`eta`] replaces every long step of a
//! labeled F-path by an ordinary step followed by weighted south steps, and
//! [`eta_inv`] folds each run of south steps back into the step before it.

use serde::{Deserialize, Serialize};

use crate::count_table::{CountKey, CountTable};
use crate::error::{Error, Result};
use num_bigint::BigInt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepClass {
    North,
    Up,
    Down,
    South,
}

fn class_of(dx: u32, dy: i64) -> StepClass {
    match (dx, dy) {
        (0, 1) => StepClass::North,
        (0, _) => StepClass::South,
        (_, 1) => StepClass::Up,
        _ => StepClass::Down,
    }
}

fn in_f(dx: u32, dy: i64) -> bool {
    (dx == 0 && dy == 1) || (dx >= 1 && dy <= 1)
}

/// A step of a labeled F-path. `label` holds `b_1, .., b_k`; its length is
/// the semilength of the step.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawFStep")]
pub struct FStep {
    pub dx: u32,
    pub dy: i64,
    pub label: Vec<i64>,
}

#[derive(Deserialize)]
struct RawFStep {
    dx: u32,
    dy: i64,
    label: Vec<i64>,
}

impl TryFrom<RawFStep> for FStep {
    type Error = Error;

    fn try_from(r: RawFStep) -> Result<Self> {
        FStep::new(r.dx, r.dy, r.label)
    }
}

impl FStep {
    pub fn new(dx: u32, dy: i64, label: Vec<i64>) -> Result<Self> {
        let step = Self { dx, dy, label };
        step.validate()?;
        Ok(step)
    }

    pub fn north() -> Self {
        Self {
            dx: 0,
            dy: 1,
            label: vec![1],
        }
    }

    /// A semilength-1 step `(dx, dy)` with the trivial label.
    pub fn simple(dx: u32, dy: i64) -> Result<Self> {
        Self::new(dx, dy, vec![dy])
    }

    pub fn validate(&self) -> Result<()> {
        if !in_f(self.dx, self.dy) {
            return Err(Error::InvalidStep(format!("({},{}) is not in F", self.dx, self.dy)));
        }
        if self.dy == 1 {
            if self.label != [1] {
                return Err(Error::InvalidStep(format!("step ({},1) must carry label [1]", self.dx)));
            }
        } else if self.label.is_empty()
            || self.label.iter().any(|&b| b > 0)
            || self.label.iter().sum::<i64>() != self.dy
        {
            return Err(Error::InvalidStep(format!(
                "label {:?} is not a split of {} into nonpositive parts",
                self.label, self.dy
            )));
        }
        Ok(())
    }

    pub fn semilength(&self) -> usize {
        self.label.len()
    }

    pub fn is_long(&self) -> bool {
        self.label.len() >= 2
    }

    pub fn class(&self) -> StepClass {
        class_of(self.dx, self.dy)
    }
}

/// A step of a weighted H-walk. Steps in F have weight 1; south steps
/// `(0, b)` with `b <= -1` carry any positive weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawWStep")]
pub struct WStep {
    pub dx: u32,
    pub dy: i64,
    pub weight: u32,
}

#[derive(Deserialize)]
struct RawWStep {
    dx: u32,
    dy: i64,
    weight: u32,
}

impl TryFrom<RawWStep> for WStep {
    type Error = Error;

    fn try_from(r: RawWStep) -> Result<Self> {
        WStep::new(r.dx, r.dy, r.weight)
    }
}

impl WStep {
    pub fn new(dx: u32, dy: i64, weight: u32) -> Result<Self> {
        let step = Self { dx, dy, weight };
        step.validate()?;
        Ok(step)
    }

    pub fn north() -> Self {
        Self {
            dx: 0,
            dy: 1,
            weight: 1,
        }
    }

    pub fn south(dy: i64, weight: u32) -> Self {
        Self { dx: 0, dy, weight }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = if self.dx == 0 && self.dy <= -1 {
            self.weight >= 1
        } else {
            in_f(self.dx, self.dy) && self.weight == 1
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidStep(format!(
                "({},{}) with weight {}",
                self.dx, self.dy, self.weight
            )))
        }
    }
}

pub fn classify(step: &WStep) -> StepClass {
    class_of(step.dx, step.dy)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PathStats {
    pub semilength: usize,
    pub height: i64,
    /// Up plus down steps; only reported for simple H-paths.
    pub ud: Option<usize>,
}

// Checks y >= x at every lattice point and returns the final height.
fn walk_heights(steps: impl Iterator<Item = (u32, i64)>) -> Result<i64> {
    let mut h = 0i64;
    for (i, (dx, dy)) in steps.enumerate() {
        h += dy - dx as i64;
        if h < 0 {
            return Err(Error::InvalidPath(format!("point {} lies below y = x", i + 1)));
        }
    }
    Ok(h)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPath<FStep>")]
pub struct LabeledFPath {
    pub steps: Vec<FStep>,
}

#[derive(Deserialize)]
struct RawPath<S> {
    steps: Vec<S>,
}

impl TryFrom<RawPath<FStep>> for LabeledFPath {
    type Error = Error;

    fn try_from(r: RawPath<FStep>) -> Result<Self> {
        LabeledFPath::new(r.steps)
    }
}

impl LabeledFPath {
    pub fn new(steps: Vec<FStep>) -> Result<Self> {
        let path = Self { steps };
        path.validate()?;
        Ok(path)
    }

    pub fn validate(&self) -> Result<()> {
        for s in &self.steps {
            s.validate()?;
        }
        walk_heights(self.steps.iter().map(|s| (s.dx, s.dy))).map(|_| ())
    }

    pub fn semilength(&self) -> usize {
        self.steps.iter().map(FStep::semilength).sum()
    }

    pub fn height(&self) -> i64 {
        self.steps.iter().map(|s| s.dy - s.dx as i64).sum()
    }

    pub fn stats(&self) -> PathStats {
        PathStats {
            semilength: self.semilength(),
            height: self.height(),
            ud: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPath<WStep>")]
pub struct WeightedHWalk {
    pub steps: Vec<WStep>,
}

impl TryFrom<RawPath<WStep>> for WeightedHWalk {
    type Error = Error;

    fn try_from(r: RawPath<WStep>) -> Result<Self> {
        WeightedHWalk::new(r.steps)
    }
}

impl WeightedHWalk {
    pub fn new(steps: Vec<WStep>) -> Result<Self> {
        let walk = Self { steps };
        walk.validate()?;
        Ok(walk)
    }

    pub fn validate(&self) -> Result<()> {
        for s in &self.steps {
            s.validate()?;
        }
        walk_heights(self.steps.iter().map(|s| (s.dx, s.dy)))?;
        for (i, pair) in self.steps.windows(2).enumerate() {
            if classify(&pair[0]) == StepClass::North && classify(&pair[1]) == StepClass::South {
                return Err(Error::InvalidPath(format!(
                    "step {} is a south step after a north step",
                    i + 2
                )));
            }
        }
        Ok(())
    }

    pub fn semilength(&self) -> usize {
        self.steps.iter().map(|s| s.weight as usize).sum()
    }

    pub fn height(&self) -> i64 {
        self.steps.iter().map(|s| s.dy - s.dx as i64).sum()
    }

    pub fn stats(&self) -> PathStats {
        PathStats {
            semilength: self.semilength(),
            height: self.height(),
            ud: None,
        }
    }

    /// True iff the walk also satisfies the simple H-path conditions.
    pub fn is_simple(&self) -> bool {
        self.simple_violation().is_none()
    }

    fn simple_violation(&self) -> Option<String> {
        if let Some(i) = self
            .steps
            .iter()
            .position(|s| classify(s) == StepClass::South && s.weight != 1)
        {
            return Some(format!("south step {} has weight {}", i + 1, self.steps[i].weight));
        }
        for (i, pair) in self.steps.windows(2).enumerate() {
            let (a, b) = (classify(&pair[0]), classify(&pair[1]));
            let vertical = |c| matches!(c, StepClass::North | StepClass::South);
            if vertical(a) && vertical(b) {
                return Some(format!("steps {} and {} are both vertical", i + 1, i + 2));
            }
        }
        None
    }
}

/// A weighted H-walk with unit south weights and no two consecutive
/// vertical steps.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPath<WStep>", into = "WeightedHWalk")]
pub struct SimpleHPath {
    walk: WeightedHWalk,
}

impl TryFrom<RawPath<WStep>> for SimpleHPath {
    type Error = Error;

    fn try_from(r: RawPath<WStep>) -> Result<Self> {
        SimpleHPath::new(WeightedHWalk::new(r.steps)?)
    }
}

impl From<SimpleHPath> for WeightedHWalk {
    fn from(p: SimpleHPath) -> Self {
        p.walk
    }
}

impl SimpleHPath {
    pub fn new(walk: WeightedHWalk) -> Result<Self> {
        walk.validate()?;
        match walk.simple_violation() {
            Some(msg) => Err(Error::InvalidPath(msg)),
            None => Ok(Self { walk }),
        }
    }

    pub fn walk(&self) -> &WeightedHWalk {
        &self.walk
    }

    pub fn steps(&self) -> &[WStep] {
        &self.walk.steps
    }

    pub fn semilength(&self) -> usize {
        self.walk.semilength()
    }

    pub fn height(&self) -> i64 {
        self.walk.height()
    }

    pub fn ud(&self) -> usize {
        self.steps()
            .iter()
            .filter(|s| matches!(classify(s), StepClass::Up | StepClass::Down))
            .count()
    }

    pub fn stats(&self) -> PathStats {
        PathStats {
            semilength: self.semilength(),
            height: self.height(),
            ud: Some(self.ud()),
        }
    }

    /// Starts with `(1,1)`, ends with an up or down step and has height 0.
    pub fn in_class_a(&self) -> bool {
        let steps = self.steps();
        self.height() == 0
            && steps.first()
                == Some(&WStep {
                    dx: 1,
                    dy: 1,
                    weight: 1,
                })
            && steps
                .last()
                .is_some_and(|s| matches!(classify(s), StepClass::Up | StepClass::Down))
    }

    /// Does not start with a north step (the empty path qualifies).
    pub fn in_class_d(&self) -> bool {
        self.steps().first().is_none_or(|s| classify(s) != StepClass::North)
    }

    /// Not starting with a north step, ending with one.
    pub fn in_class_b(&self) -> bool {
        self.in_class_d() && self.steps().last().is_some_and(|s| classify(s) == StepClass::North)
    }

    pub fn in_class(&self, class: PathClass) -> bool {
        match class {
            PathClass::A => self.in_class_a(),
            PathClass::D => self.in_class_d(),
            PathClass::B => self.in_class_b(),
        }
    }
}

/// Substitutes every long step by an ordinary step followed by weighted
/// south steps. Preserves semilength and height.
pub fn eta(q: &LabeledFPath) -> WeightedHWalk {
    WeightedHWalk {
        steps: eta_steps(&q.steps),
    }
}

/// The step substitution behind [`eta`], applied to any sequence of steps
/// without checking the region the path stays in.
pub fn eta_steps(steps: &[FStep]) -> Vec<WStep> {
    let mut out = Vec::with_capacity(steps.len());
    for s in steps {
        if !s.is_long() {
            out.push(WStep {
                dx: s.dx,
                dy: s.dy,
                weight: 1,
            });
            continue;
        }
        let b = &s.label;
        let k = b.len();
        out.push(WStep {
            dx: s.dx,
            dy: b[k - 1] + 1,
            weight: 1,
        });
        // 1-based indices 2..=k-1 with nonzero entries, visited from the right
        let mut upper = k;
        for i in (2..k).rev().filter(|&i| b[i - 1] != 0) {
            out.push(WStep::south(b[i - 1], (upper - i) as u32));
            upper = i;
        }
        out.push(WStep::south(b[0] - 1, (upper - 1) as u32));
    }
    out
}

/// Inverse of [`eta`]: each maximal run of south steps is folded into the
/// up or down step preceding it.
pub fn eta_inv(r: &WeightedHWalk) -> Result<LabeledFPath> {
    LabeledFPath::new(eta_inv_steps(&r.steps)?)
}

/// Step-level inverse of [`eta_steps`].
pub fn eta_inv_steps(steps: &[WStep]) -> Result<Vec<FStep>> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < steps.len() {
        let head = steps[i];
        if classify(&head) == StepClass::South {
            return Err(Error::InvalidPath(format!(
                "south step {} has no step to attach to",
                i + 1
            )));
        }
        let mut j = i + 1;
        while j < steps.len() && classify(&steps[j]) == StepClass::South {
            j += 1;
        }
        let run = &steps[i + 1..j];
        if run.is_empty() {
            out.push(FStep {
                dx: head.dx,
                dy: head.dy,
                label: vec![head.dy],
            });
        } else {
            if head.dx == 0 {
                return Err(Error::InvalidPath(format!("south step {} follows a north step", i + 2)));
            }
            let k = 1 + run.iter().map(|s| s.weight as usize).sum::<usize>();
            let mut label = vec![0i64; k];
            let (last, interior) = run.split_last().expect("run is nonempty");
            label[0] = last.dy + 1;
            label[k - 1] = head.dy - 1;
            // indices i_1 < i_2 < .. read from the right end of the run
            let mut index = 1 + last.weight as usize;
            for s in interior.iter().rev() {
                label[index - 1] = s.dy;
                index += s.weight as usize;
            }
            debug_assert_eq!(index, k);
            let dy = label.iter().sum();
            out.push(FStep { dx: head.dx, dy, label });
        }
        i = j;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PathKind {
    LabeledF,
    WeightedH,
    SimpleH,
}

/// The three distinguished subfamilies of simple H-paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PathClass {
    A,
    D,
    B,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PathFilter {
    pub height: Option<i64>,
    pub ud: Option<usize>,
    pub class: Option<PathClass>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum AnyPath {
    Labeled(LabeledFPath),
    Weighted(WeightedHWalk),
    Simple(SimpleHPath),
}

impl AnyPath {
    pub fn stats(&self) -> PathStats {
        match self {
            AnyPath::Labeled(p) => p.stats(),
            AnyPath::Weighted(p) => p.stats(),
            AnyPath::Simple(p) => p.stats(),
        }
    }
}

// Nonpositive labels of length k summing to `total`, in lexicographic order.
fn labels(total: i64, k: usize) -> Vec<Vec<i64>> {
    fn go(rest: i64, slots: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if slots == 1 {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for b in rest..=0 {
            cur.push(b);
            go(rest - b, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Calls `visit` on every labeled F-path of semilength `n`, children ordered
/// by `(dx, dy, label)`.
pub fn visit_labeled_f(n: usize, visit: &mut dyn FnMut(&LabeledFPath)) {
    fn go(h: i64, left: usize, path: &mut LabeledFPath, visit: &mut dyn FnMut(&LabeledFPath)) {
        if left == 0 {
            visit(path);
            return;
        }
        path.steps.push(FStep::north());
        go(h + 1, left - 1, path, visit);
        path.steps.pop();
        for a in 1..=(h + 1) as u32 {
            for dy in (a as i64 - h)..=1 {
                if dy == 1 {
                    path.steps.push(FStep {
                        dx: a,
                        dy: 1,
                        label: vec![1],
                    });
                    go(h + 1 - a as i64, left - 1, path, visit);
                    path.steps.pop();
                    continue;
                }
                for k in 1..=left {
                    for label in labels(dy, k) {
                        path.steps.push(FStep { dx: a, dy, label });
                        go(h + dy - a as i64, left - k, path, visit);
                        path.steps.pop();
                    }
                }
            }
        }
    }
    go(0, n, &mut LabeledFPath::default(), visit);
}

/// Calls `visit` on every weighted H-walk of semilength `n`, children ordered
/// by `(dx, dy, weight)`.
pub fn visit_weighted_h(n: usize, visit: &mut dyn FnMut(&WeightedHWalk)) {
    fn go(h: i64, left: usize, walk: &mut WeightedHWalk, visit: &mut dyn FnMut(&WeightedHWalk)) {
        if left == 0 {
            visit(walk);
            return;
        }
        let after_north = walk.steps.last().is_some_and(|s| classify(s) == StepClass::North);
        if !after_north {
            for b in -h..=-1 {
                for w in 1..=left {
                    walk.steps.push(WStep::south(b, w as u32));
                    go(h + b, left - w, walk, visit);
                    walk.steps.pop();
                }
            }
        }
        walk.steps.push(WStep::north());
        go(h + 1, left - 1, walk, visit);
        walk.steps.pop();
        push_diagonal_steps(h, left, walk, &mut |h, left, walk| go(h, left, walk, visit));
    }
    go(0, n, &mut WeightedHWalk::default(), visit);
}

// Up and down steps from height h, in (dx, dy) order.
fn push_diagonal_steps(
    h: i64,
    left: usize,
    walk: &mut WeightedHWalk,
    next: &mut dyn FnMut(i64, usize, &mut WeightedHWalk),
) {
    for a in 1..=(h + 1) as u32 {
        for dy in (a as i64 - h)..=1 {
            walk.steps.push(WStep { dx: a, dy, weight: 1 });
            next(h + dy - a as i64, left - 1, walk);
            walk.steps.pop();
        }
    }
}

/// Calls `visit` on every simple H-path of semilength `n`.
pub fn visit_simple_h(n: usize, visit: &mut dyn FnMut(&SimpleHPath)) {
    fn go(h: i64, left: usize, path: &mut WeightedHWalk, visit: &mut dyn FnMut(&SimpleHPath)) {
        if left == 0 {
            // only admissible steps are ever pushed
            let simple = SimpleHPath { walk: path.clone() };
            visit(&simple);
            return;
        }
        let prev_vertical = path
            .steps
            .last()
            .is_some_and(|s| matches!(classify(s), StepClass::North | StepClass::South));
        if !prev_vertical {
            if !path.steps.is_empty() {
                for b in -h..=-1 {
                    path.steps.push(WStep::south(b, 1));
                    go(h + b, left - 1, path, visit);
                    path.steps.pop();
                }
            }
            path.steps.push(WStep::north());
            go(h + 1, left - 1, path, visit);
            path.steps.pop();
        }
        push_diagonal_steps(h, left, path, &mut |h, left, path| go(h, left, path, visit));
    }
    go(0, n, &mut WeightedHWalk::default(), visit);
}

/// All paths of the requested kind and semilength that pass the filter.
pub fn enumerate_paths(kind: PathKind, n: usize, filter: PathFilter) -> Result<Vec<AnyPath>> {
    if kind != PathKind::SimpleH {
        if filter.ud.is_some() {
            return Err(Error::UnsupportedFilter("ud is only defined for simple H-paths"));
        }
        if filter.class.is_some() {
            return Err(Error::UnsupportedFilter(
                "classes A, D, B are families of simple H-paths",
            ));
        }
    }
    let height_ok = |h: i64| filter.height.is_none_or(|t| t == h);
    let mut out = Vec::new();
    match kind {
        PathKind::LabeledF => visit_labeled_f(n, &mut |p| {
            if height_ok(p.height()) {
                out.push(AnyPath::Labeled(p.clone()));
            }
        }),
        PathKind::WeightedH => visit_weighted_h(n, &mut |p| {
            if height_ok(p.height()) {
                out.push(AnyPath::Weighted(p.clone()));
            }
        }),
        PathKind::SimpleH => visit_simple_h(n, &mut |p| {
            if height_ok(p.height())
                && filter.ud.is_none_or(|m| p.ud() == m)
                && filter.class.is_none_or(|c| p.in_class(c))
            {
                out.push(AnyPath::Simple(p.clone()));
            }
        }),
    }
    Ok(out)
}

/// Counts of simple H-paths of semilength `n`, keyed by `(n, ud, height)`,
/// optionally restricted to one class.
pub fn simple_h_counts(n: usize, class: Option<PathClass>) -> CountTable {
    let mut table = CountTable::new();
    let one = BigInt::from(1);
    visit_simple_h(n, &mut |p| {
        if class.is_none_or(|c| p.in_class(c)) {
            table.add(CountKey::full(n as u32, p.ud() as u32, Some(p.height() as u32)), &one);
        }
    });
    table
}

/// Counts of weighted H-walks of semilength `n`, keyed by `(n, -, height)`.
pub fn weighted_h_counts(n: usize) -> CountTable {
    let mut table = CountTable::new();
    let one = BigInt::from(1);
    visit_weighted_h(n, &mut |p| {
        table.add(
            CountKey {
                n: Some(n as u32),
                m: None,
                t: Some(p.height() as u32),
            },
            &one,
        );
    });
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(dx: u32, dy: i64) -> WStep {
        WStep::new(dx, dy, 1).unwrap()
    }

    fn long_mixed_path() -> LabeledFPath {
        let mut steps = vec![FStep::north()];
        steps.extend([
            FStep::simple(1, 1).unwrap(),
            FStep::simple(1, 1).unwrap(),
            FStep::simple(2, 1).unwrap(),
        ]);
        steps.extend(std::iter::repeat_n(FStep::north(), 6));
        steps.push(FStep::simple(2, -1).unwrap());
        steps.push(FStep::simple(1, 1).unwrap());
        steps.extend(std::iter::repeat_n(FStep::north(), 5));
        steps.push(FStep::new(1, 0, vec![0, 0, 0]).unwrap());
        steps.push(FStep::new(1, -3, vec![-1, 0, 0, -1, -1]).unwrap());
        steps.push(FStep::north());
        LabeledFPath::new(steps).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&WStep::new(0, 1, 1).unwrap()), StepClass::North);
        assert_eq!(classify(&WStep::new(2, 0, 1).unwrap()), StepClass::Down);
        assert_eq!(classify(&WStep::new(0, -2, 3).unwrap()), StepClass::South);
        assert_eq!(classify(&WStep::new(3, 1, 1).unwrap()), StepClass::Up);
        assert!(WStep::new(1, 0, 2).is_err());
        assert!(WStep::new(0, 0, 1).is_err());
        assert!(WStep::new(0, -1, 0).is_err());
        assert!(WStep::new(1, 2, 1).is_err());
    }

    #[test]
    fn fstep_labels() {
        assert!(FStep::new(0, 1, vec![1]).is_ok());
        assert!(FStep::new(2, 1, vec![0, 1]).is_err());
        assert!(FStep::new(1, -3, vec![-1, 0, -2]).is_ok());
        assert!(FStep::new(1, -3, vec![-1, 1, -3]).is_err());
        assert!(FStep::new(1, -3, vec![-1, -1]).is_err());
        assert!(FStep::new(1, 0, vec![]).is_err());
    }

    #[test]
    fn long_mixed_path_stats() {
        let q = long_mixed_path();
        assert_eq!(q.steps.len(), 20);
        assert_eq!(
            q.stats(),
            PathStats {
                semilength: 26,
                height: 4,
                ud: None
            }
        );
        let r = eta(&q);
        r.validate().unwrap();
        assert_eq!((r.semilength(), r.height()), (26, 4));
        let mut expected = vec![w(0, 1), w(1, 1), w(1, 1), w(2, 1)];
        expected.extend(std::iter::repeat_n(w(0, 1), 6));
        expected.extend([w(2, -1), w(1, 1)]);
        expected.extend(std::iter::repeat_n(w(0, 1), 5));
        expected.extend([
            w(1, 1),
            WStep::south(-1, 2),
            w(1, 0),
            WStep::south(-1, 1),
            WStep::south(-2, 3),
            w(0, 1),
        ]);
        assert_eq!(r.steps, expected);
        assert_eq!(eta_inv(&r).unwrap(), q);
    }

    #[test]
    fn eta_long_step_examples() {
        let lift = |s: FStep| {
            let mut steps = vec![FStep::north(); 4];
            steps.push(s);
            LabeledFPath::new(steps).unwrap()
        };
        let q = lift(FStep::new(1, 0, vec![0, 0, 0]).unwrap());
        assert_eq!(&eta(&q).steps[4..], &[w(1, 1), WStep::south(-1, 2)]);
        let q = lift(FStep::new(1, -3, vec![-1, 0, 0, -1, -1]).unwrap());
        assert_eq!(
            &eta(&q).steps[4..],
            &[w(1, 0), WStep::south(-1, 1), WStep::south(-2, 3)]
        );
        let q = LabeledFPath::new(vec![FStep::north()]).unwrap();
        assert_eq!(eta(&q).steps, vec![w(0, 1)]);
    }

    #[test]
    fn eta_inv_examples() {
        let r = WeightedHWalk::new(vec![w(0, 1), w(0, 1), w(1, 1), WStep::south(-1, 2)]).unwrap();
        assert_eq!(eta_inv(&r).unwrap().steps[2], FStep::new(1, 0, vec![0, 0, 0]).unwrap());
        let r = WeightedHWalk::new(vec![
            w(0, 1),
            w(0, 1),
            w(0, 1),
            w(0, 1),
            w(1, 0),
            WStep::south(-1, 1),
            WStep::south(-2, 3),
        ])
        .unwrap();
        assert_eq!(
            eta_inv(&r).unwrap().steps[4],
            FStep::new(1, -3, vec![-1, 0, 0, -1, -1]).unwrap()
        );
        let r = WeightedHWalk::new(vec![w(1, 1), w(0, 1), w(1, 0)]).unwrap();
        let q = eta_inv(&r).unwrap();
        assert!(q.steps.iter().all(|s| s.semilength() == 1));
        assert_eq!(q.steps.len(), 3);
    }

    #[test]
    fn walk_validation() {
        assert!(WeightedHWalk::new(vec![w(0, 1), WStep::south(-1, 1)]).is_err());
        assert!(WeightedHWalk::new(vec![w(1, 0)]).is_err());
        assert!(WeightedHWalk::new(vec![
            w(0, 1),
            w(0, 1),
            w(1, 1),
            WStep::south(-1, 1),
            WStep::south(-1, 1)
        ])
        .is_ok());
        let nn = WeightedHWalk::new(vec![w(0, 1), w(0, 1)]).unwrap();
        assert!(SimpleHPath::new(nn).is_err());
        let heavy = WeightedHWalk::new(vec![w(0, 1), w(1, 1), WStep::south(-1, 2)]).unwrap();
        assert!(SimpleHPath::new(heavy).is_err());
    }

    #[test]
    fn simple_path_stats() {
        let p = SimpleHPath::new(WeightedHWalk::new(vec![w(0, 1), w(2, 1)]).unwrap()).unwrap();
        assert_eq!(
            p.stats(),
            PathStats {
                semilength: 2,
                height: 0,
                ud: Some(1)
            }
        );
        let empty = SimpleHPath::default();
        assert_eq!(
            empty.stats(),
            PathStats {
                semilength: 0,
                height: 0,
                ud: Some(0)
            }
        );
        assert!(empty.in_class_d() && !empty.in_class_a() && !empty.in_class_b());
    }

    #[test]
    fn simple_h_semilength_two() {
        let all = enumerate_paths(PathKind::SimpleH, 2, PathFilter::default()).unwrap();
        assert_eq!(all.len(), 5);
        let height = |t| {
            let mut v: Vec<Vec<WStep>> = enumerate_paths(
                PathKind::SimpleH,
                2,
                PathFilter {
                    height: Some(t),
                    ..Default::default()
                },
            )
            .unwrap()
            .into_iter()
            .map(|p| match p {
                AnyPath::Simple(p) => p.steps().to_vec(),
                _ => unreachable!(),
            })
            .collect();
            v.sort();
            v
        };
        let mut t0 = vec![vec![w(0, 1), w(2, 1)], vec![w(0, 1), w(1, 0)], vec![w(1, 1), w(1, 1)]];
        t0.sort();
        assert_eq!(height(0), t0);
        let mut t1 = vec![vec![w(0, 1), w(1, 1)], vec![w(1, 1), w(0, 1)]];
        t1.sort();
        assert_eq!(height(1), t1);
        assert!(height(2).is_empty());
    }

    #[test]
    fn weighted_h_semilength_two() {
        let all = enumerate_paths(PathKind::WeightedH, 2, PathFilter::default()).unwrap();
        assert_eq!(all.len(), 6);
        let t = weighted_h_counts(2);
        let at = |h| t.get(Some(2), None, Some(h));
        assert_eq!(
            (at(0), at(1), at(2)),
            (BigInt::from(3), BigInt::from(2), BigInt::from(1))
        );
    }

    #[test]
    fn empty_paths_and_filters() {
        for kind in [PathKind::LabeledF, PathKind::WeightedH, PathKind::SimpleH] {
            let all = enumerate_paths(kind, 0, PathFilter::default()).unwrap();
            assert_eq!(all.len(), 1);
            assert_eq!(all[0].stats().semilength, 0);
        }
        let f = PathFilter {
            ud: Some(1),
            ..Default::default()
        };
        assert!(enumerate_paths(PathKind::LabeledF, 2, f).is_err());
        let a0 = PathFilter {
            class: Some(PathClass::A),
            ..Default::default()
        };
        assert!(enumerate_paths(PathKind::SimpleH, 0, a0).unwrap().is_empty());
        let d0 = PathFilter {
            class: Some(PathClass::D),
            ..Default::default()
        };
        assert_eq!(enumerate_paths(PathKind::SimpleH, 0, d0).unwrap().len(), 1);
    }

    #[test]
    fn generated_paths_are_valid_and_ordered() {
        for n in 0..=4 {
            let mut seen = Vec::new();
            visit_labeled_f(n, &mut |p| {
                p.validate().unwrap();
                assert_eq!(p.semilength(), n);
                seen.push(p.clone());
            });
            let len = seen.len();
            seen.dedup();
            assert_eq!(seen.len(), len);
            visit_weighted_h(n, &mut |p| {
                p.validate().unwrap();
                assert_eq!(p.semilength(), n);
            });
            visit_simple_h(n, &mut |p| {
                SimpleHPath::new(p.walk().clone()).unwrap();
                assert_eq!(p.semilength(), n);
            });
        }
    }

    #[test]
    fn json_shapes() {
        let s: FStep = serde_json::from_str(r#"{"dx":1,"dy":-3,"label":[-1,0,0,-1,-1]}"#).unwrap();
        assert_eq!(s.semilength(), 5);
        assert!(serde_json::from_str::<FStep>(r#"{"dx":1,"dy":-3,"label":[-1]}"#).is_err());
        let r: WeightedHWalk =
            serde_json::from_str(r#"{"steps":[{"dx":0,"dy":1,"weight":1},{"dx":1,"dy":1,"weight":1}]}"#).unwrap();
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"steps":[{"dx":0,"dy":1,"weight":1},{"dx":1,"dy":1,"weight":1}]}"#
        );
        assert!(serde_json::from_str::<WeightedHWalk>(r#"{"steps":[{"dx":0,"dy":-1,"weight":1}]}"#).is_err());
        let p: SimpleHPath = serde_json::from_str(r#"{"steps":[{"dx":1,"dy":1,"weight":1}]}"#).unwrap();
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"steps":[{"dx":1,"dy":1,"weight":1}]}"#
        );
    }
}
