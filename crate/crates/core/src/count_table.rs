//! Exact counts indexed by length `n`, `dist` value `m` and rank `t`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// A cell key. `None` in a slot means "summed over" (or, for `t`, that the
/// statistic was undefined).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CountKey {
    pub n: Option<u32>,
    pub m: Option<u32>,
    pub t: Option<u32>,
}

impl CountKey {
    pub fn full(n: u32, m: u32, t: Option<u32>) -> Self {
        Self {
            n: Some(n),
            m: Some(m),
            t,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CountTable {
    cells: BTreeMap<CountKey, BigInt>,
}

#[derive(Serialize, Deserialize)]
struct JsonCell {
    n: Option<u32>,
    m: Option<u32>,
    t: Option<u32>,
    count: String,
}

impl CountTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, key: CountKey, count: &BigInt) {
        if count.is_zero() {
            return;
        }
        *self.cells.entry(key).or_default() += count;
    }

    pub fn merge(&mut self, other: &CountTable) {
        for (k, v) in &other.cells {
            self.add(*k, v);
        }
    }

    pub fn get(&self, n: Option<u32>, m: Option<u32>, t: Option<u32>) -> BigInt {
        self.cells.get(&CountKey { n, m, t }).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CountKey, &BigInt)> {
        self.cells.iter()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn total(&self) -> BigInt {
        self.cells.values().sum()
    }

    /// Sums out every coordinate whose `keep_*` flag is false.
    pub fn marginalize(&self, keep_n: bool, keep_m: bool, keep_t: bool) -> CountTable {
        let mut out = CountTable::new();
        for (k, v) in &self.cells {
            let key = CountKey {
                n: k.n.filter(|_| keep_n),
                m: k.m.filter(|_| keep_m),
                t: k.t.filter(|_| keep_t),
            };
            out.add(key, v);
        }
        out
    }

    /// One JSON object per cell, counts as decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        let cells: Vec<JsonCell> = self
            .cells
            .iter()
            .map(|(k, v)| JsonCell {
                n: k.n,
                m: k.m,
                t: k.t,
                count: v.to_string(),
            })
            .collect();
        serde_json::to_value(cells).expect("cells serialize")
    }

    pub fn from_json(value: &serde_json::Value) -> crate::Result<CountTable> {
        let cells: Vec<JsonCell> = serde_json::from_value(value.clone())?;
        let mut out = CountTable::new();
        for c in cells {
            let count: BigInt = c
                .count
                .parse()
                .map_err(|_| crate::Error::Json(format!("bad count {:?}", c.count)))?;
            out.add(CountKey { n: c.n, m: c.m, t: c.t }, &count);
        }
        Ok(out)
    }
}
