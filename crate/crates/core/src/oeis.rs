//! OEIS b-files: parsing, an on-disk cache and bundled offline fixtures.

use std::collections::HashMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};

pub const CACHE_ENV: &str = "INVSEQ_LAB_CACHE";
pub const DEFAULT_HOST: &str = "https://oeis.org";

const FIXTURES: &[(&str, &str)] = &[
    ("A002293", include_str!("../fixtures/b002293.txt")),
    ("A069271", include_str!("../fixtures/b069271.txt")),
    ("A355174", include_str!("../fixtures/b355174.txt")),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BSequence {
    pub id: String,
    pub entries: Vec<(i64, BigInt)>,
}

impl BSequence {
    pub fn value_at(&self, index: i64) -> Option<&BigInt> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn values(&self) -> impl Iterator<Item = &BigInt> {
        self.entries.iter().map(|(_, v)| v)
    }

    pub fn first_index(&self) -> Option<i64> {
        self.entries.first().map(|(i, _)| *i)
    }
}

/// `A` followed by six digits.
pub fn validate_id(id: &str) -> Result<()> {
    let b = id.as_bytes();
    if b.len() == 7 && b[0] == b'A' && b[1..].iter().all(u8::is_ascii_digit) {
        Ok(())
    } else {
        Err(Error::BadSequenceId(id.to_string()))
    }
}

/// Parses `index value` lines. Lines starting with `#` and blank lines are
/// skipped; anything else is an error carrying its 1-based line number.
pub fn parse_bfile(id: &str, text: &str) -> Result<BSequence> {
    let mut entries: Vec<(i64, BigInt)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::BFileParse { line: n + 1, message };
        let mut parts = trimmed.split_whitespace();
        let (Some(i), Some(v), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(err(format!("expected \"index value\", got {line:?}")));
        };
        let index: i64 = i.parse().map_err(|_| err(format!("bad index {i:?}")))?;
        let value: BigInt = v.parse().map_err(|_| err(format!("bad value {v:?}")))?;
        if let Some((prev, _)) = entries.last() {
            if index <= *prev {
                return Err(err(format!("index {index} does not increase")));
            }
        }
        entries.push((index, value));
    }
    Ok(BSequence {
        id: id.to_string(),
        entries,
    })
}

/// Serializes in the plain `i v\n` layout.
pub fn format_bfile(seq: &BSequence) -> String {
    let mut out = String::new();
    for (i, v) in &seq.entries {
        out.push_str(&format!("{i} {v}\n"));
    }
    out
}

pub fn fixture(id: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(k, _)| *k == id).map(|(_, v)| *v)
}

pub fn default_cache_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(CACHE_ENV) {
        return PathBuf::from(dir);
    }
    dirs::data_dir()
        .or_else(dirs::home_dir)
        .unwrap_or_else(std::env::temp_dir)
        .join("invseq-lab")
        .join("oeis")
}

/// Fetches a URL body as text.
pub trait Transport: Send + Sync {
    fn get(&self, url: &str) -> std::result::Result<String, String>;
}

pub struct HttpTransport;

impl Transport for HttpTransport {
    fn get(&self, url: &str) -> std::result::Result<String, String> {
        ureq::get(url)
            .call()
            .map_err(|e| e.to_string())?
            .body_mut()
            .read_to_string()
            .map_err(|e| e.to_string())
    }
}

fn flight_lock(id: &str) -> Arc<Mutex<()>> {
    static LOCKS: OnceLock<Mutex<HashMap<String, Arc<Mutex<()>>>>> = OnceLock::new();
    let mut map = LOCKS
        .get_or_init(Default::default)
        .lock()
        .unwrap_or_else(|p| p.into_inner());
    map.entry(id.to_string()).or_default().clone()
}

pub struct Client {
    cache_dir: PathBuf,
    host: String,
    transport: Box<dyn Transport>,
}

impl Client {
    pub fn new(cache_dir: impl Into<PathBuf>) -> Self {
        Self {
            cache_dir: cache_dir.into(),
            host: DEFAULT_HOST.to_string(),
            transport: Box::new(HttpTransport),
        }
    }

    pub fn with_transport(mut self, host: &str, transport: Box<dyn Transport>) -> Self {
        self.host = host.trim_end_matches('/').to_string();
        self.transport = transport;
        self
    }

    pub fn cache_dir(&self) -> &Path {
        &self.cache_dir
    }

    fn cache_path(&self, id: &str) -> PathBuf {
        self.cache_dir.join(format!("b{}.txt", &id[1..]))
    }

    pub fn url(&self, id: &str) -> String {
        format!("{}/{}/b{}.txt", self.host, id, &id[1..])
    }

    /// Cached copy if present; otherwise one GET (online) or the bundled
    /// fixture (offline).
    pub fn fetch(&self, id: &str, offline: bool) -> Result<BSequence> {
        validate_id(id)?;
        let lock = flight_lock(id);
        let _guard = lock.lock().unwrap_or_else(|p| p.into_inner());

        let path = self.cache_path(id);
        if path.exists() {
            let text = std::fs::read_to_string(&path)?;
            return parse_bfile(id, &text);
        }
        if offline {
            let text = fixture(id).ok_or_else(|| Error::NoFixture { id: id.to_string() })?;
            return parse_bfile(id, text);
        }
        let text = self.transport.get(&self.url(id)).map_err(|reason| Error::Unavailable {
            id: id.to_string(),
            reason,
        })?;
        let seq = parse_bfile(id, &text)?;
        if seq.entries.is_empty() {
            return Err(Error::Unavailable {
                id: id.to_string(),
                reason: "empty b-file".into(),
            });
        }
        self.store(&path, &text)?;
        Ok(seq)
    }

    // write-temp-then-rename
    fn store(&self, path: &Path, text: &str) -> Result<()> {
        std::fs::create_dir_all(&self.cache_dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.cache_dir)?;
        tmp.write_all(text.as_bytes())?;
        tmp.persist(path).map_err(|e| Error::Io(e.to_string()))?;
        Ok(())
    }
}

/// How produced values line up with b-file indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OffsetPolicy {
    /// b-file index of the first produced value.
    pub first_index: i64,
    /// Human-readable description of the linear order, recorded in reports.
    pub order: String,
}

impl OffsetPolicy {
    pub fn starting_at(first_index: i64) -> Self {
        Self {
            first_index,
            order: format!("term k at index {first_index} + k"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub id: String,
    pub policy: OffsetPolicy,
    pub produced: usize,
    pub matched_prefix: usize,
    /// First disagreement as `(index, expected, produced)`; `expected` is
    /// `None` past the end of the b-file.
    pub first_mismatch: Option<(i64, Option<String>, String)>,
    pub pass: bool,
}

pub fn compare(seq: &BSequence, produced: &[BigInt], policy: OffsetPolicy) -> Comparison {
    let mut matched = 0;
    let mut first_mismatch = None;
    for (k, v) in produced.iter().enumerate() {
        let index = policy.first_index + k as i64;
        match seq.value_at(index) {
            Some(expected) if expected == v => matched += 1,
            other => {
                first_mismatch = Some((index, other.map(|e| e.to_string()), v.to_string()));
                break;
            }
        }
    }
    Comparison {
        id: seq.id.clone(),
        policy,
        produced: produced.len(),
        matched_prefix: matched,
        pass: !produced.is_empty() && first_mismatch.is_none(),
        first_mismatch,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::atomic::{AtomicUsize, Ordering};

    struct Canned {
        body: std::result::Result<String, String>,
        calls: Arc<AtomicUsize>,
    }

    impl Transport for Canned {
        fn get(&self, url: &str) -> std::result::Result<String, String> {
            assert!(url.ends_with("/A000045/b000045.txt"), "{url}");
            self.calls.fetch_add(1, Ordering::SeqCst);
            self.body.clone()
        }
    }

    #[test]
    fn ids() {
        assert!(validate_id("A002293").is_ok());
        for bad in ["bogus", "A12345", "A1234567", "B002293", "A00229x"] {
            assert_eq!(validate_id(bad), Err(Error::BadSequenceId(bad.into())));
        }
    }

    #[test]
    fn parser() {
        let s = parse_bfile("A000001", "# header\n0 1\n1 -2\n\n2 123456789012345678901234567890\n").unwrap();
        assert_eq!(s.entries.len(), 3);
        assert_eq!(s.value_at(2).unwrap().to_string(), "123456789012345678901234567890");
        assert_eq!(s.value_at(5), None);
        assert!(matches!(
            parse_bfile("A000001", "0 1\n1 x\n"),
            Err(Error::BFileParse { line: 2, .. })
        ));
        assert!(matches!(
            parse_bfile("A000001", "0 1 2\n"),
            Err(Error::BFileParse { line: 1, .. })
        ));
        assert!(matches!(
            parse_bfile("A000001", "1 1\n1 2\n"),
            Err(Error::BFileParse { line: 2, .. })
        ));
        assert!(matches!(
            parse_bfile("A000001", "0\n"),
            Err(Error::BFileParse { line: 1, .. })
        ));
        assert_eq!(format_bfile(&s), "0 1\n1 -2\n2 123456789012345678901234567890\n");
    }

    #[test]
    fn offline_fixtures() {
        let dir = tempfile::tempdir().unwrap();
        let client = Client::new(dir.path());
        let head = |id: &str| -> Vec<String> {
            client
                .fetch(id, true)
                .unwrap()
                .values()
                .take(5)
                .map(|v| v.to_string())
                .collect()
        };
        assert_eq!(head("A002293"), ["1", "1", "4", "22", "140"]);
        assert_eq!(head("A069271"), ["1", "2", "9", "52", "340"]);
        assert_eq!(head("A355174"), ["1", "1", "1", "4", "4"]);
        assert!(matches!(client.fetch("bogus", true), Err(Error::BadSequenceId(_))));
        assert!(matches!(client.fetch("A000045", true), Err(Error::NoFixture { .. })));
    }

    #[test]
    fn online_fetch_caches() {
        let dir = tempfile::tempdir().unwrap();
        let calls = Arc::new(AtomicUsize::new(0));
        let client = Client::new(dir.path()).with_transport(
            "http://mirror.test/",
            Box::new(Canned {
                body: Ok("0 0\n1 1\n2 1\n3 2\n".into()),
                calls: calls.clone(),
            }),
        );
        let first = client.fetch("A000045", false).unwrap();
        let second = client.fetch("A000045", false).unwrap();
        assert_eq!(first, second);
        assert_eq!(calls.load(Ordering::SeqCst), 1);
        assert!(dir.path().join("b000045.txt").exists());
        // cached copies are also served offline
        assert_eq!(client.fetch("A000045", true).unwrap(), first);
    }

    #[test]
    fn online_failure_without_cache() {
        let dir = tempfile::tempdir().unwrap();
        let calls = Arc::new(AtomicUsize::new(0));
        let client = Client::new(dir.path()).with_transport(
            "http://mirror.test",
            Box::new(Canned {
                body: Err("refused".into()),
                calls,
            }),
        );
        assert!(matches!(client.fetch("A000045", false), Err(Error::Unavailable { .. })));
        assert!(!dir.path().join("b000045.txt").exists());
    }

    #[test]
    fn comparison() {
        let seq = parse_bfile("A000001", "0 1\n1 1\n2 4\n3 22\n").unwrap();
        let v = |xs: &[i64]| xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let c = compare(&seq, &v(&[1, 1, 4]), OffsetPolicy::starting_at(0));
        assert!(c.pass);
        assert_eq!(c.matched_prefix, 3);
        let c = compare(&seq, &v(&[1, 4, 23]), OffsetPolicy::starting_at(1));
        assert!(!c.pass);
        assert_eq!(c.matched_prefix, 2);
        assert_eq!(c.first_mismatch, Some((3, Some("22".into()), "23".into())));
        let c = compare(&seq, &v(&[22, 5]), OffsetPolicy::starting_at(3));
        assert_eq!(c.first_mismatch, Some((4, None, "5".into())));
        assert!(!compare(&seq, &[], OffsetPolicy::starting_at(0)).pass);
    }
}
