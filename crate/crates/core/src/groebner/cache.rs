use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock, RwLock};

use log::warn;

use super::{buchberger, engine_for, source_digest, to_vector, with_relations, GroebnerBasis};
use crate::error::Result;
use crate::ideal::IdealSpec;
use crate::order::TermOrder;
use crate::poly::Polynomial;
use crate::ring::RingContext;

const HEADER: &str = "tckit-gb v1";
const MAX_ENTRIES: usize = 4096;

/// Gröbner basis cache keyed by (context, generators, order) digest.
///
/// Concurrent readers and writers are fine; two writers of one key store the
/// same reduced basis, so whichever lands last wins.
#[derive(Default)]
pub struct GbCache {
    mem: RwLock<HashMap<String, Arc<GroebnerBasis>>>,
    dir: RwLock<Option<PathBuf>>,
}

impl GbCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn global() -> &'static GbCache {
        static GLOBAL: OnceLock<GbCache> = OnceLock::new();
        GLOBAL.get_or_init(GbCache::new)
    }

    /// Enables the on-disk layer. Returns false (and leaves it disabled) when the
    /// directory cannot be created or written.
    pub fn set_dir(&self, dir: Option<&Path>) -> bool {
        let usable = match dir {
            None => None,
            Some(d) => match probe_writable(d) {
                Ok(()) => Some(d.to_path_buf()),
                Err(e) => {
                    warn!("cache directory {} unusable ({e}); disk cache disabled", d.display());
                    None
                }
            },
        };
        let ok = usable.is_some() || dir.is_none();
        *self.dir.write().unwrap() = usable;
        ok
    }

    pub fn dir(&self) -> Option<PathBuf> {
        self.dir.read().unwrap().clone()
    }

    pub fn len(&self) -> usize {
        self.mem.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn clear(&self) {
        self.mem.write().unwrap().clear();
    }

    pub fn key_for(ideal: &IdealSpec, order: &TermOrder) -> String {
        let texts: Vec<String> = with_relations(ideal).iter().map(|g| g.to_string()).collect();
        source_digest(ideal.ring(), order, &texts)
    }

    pub fn get_or_compute(&self, ideal: &IdealSpec, order: &TermOrder) -> Result<Arc<GroebnerBasis>> {
        let key = Self::key_for(ideal, order);
        if let Some(hit) = self.mem.read().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let dir = self.dir();
        if let Some(d) = &dir {
            if let Some(gb) = load(d, &key, ideal.ring(), order) {
                let gb = Arc::new(gb);
                self.insert(key, gb.clone());
                return Ok(gb);
            }
        }
        let gb = Arc::new(buchberger(ideal, order)?);
        if let Some(d) = &dir {
            if let Err(e) = store(d, &key, &gb) {
                warn!("could not write cache entry {key}: {e}");
            }
        }
        self.insert(key, gb.clone());
        Ok(gb)
    }

    fn insert(&self, key: String, gb: Arc<GroebnerBasis>) {
        let mut mem = self.mem.write().unwrap();
        if mem.len() >= MAX_ENTRIES {
            mem.clear();
        }
        mem.insert(key, gb);
    }
}

fn probe_writable(dir: &Path) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let probe = dir.join(format!(".probe-{}", std::process::id()));
    fs::write(&probe, b"")?;
    fs::remove_file(probe)
}

pub(crate) fn entry_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.gb"))
}

/// Writes `tckit-gb v1 <digest>` followed by one polynomial per line.
/// The file is renamed into place so concurrent writers never interleave.
pub fn store(dir: &Path, key: &str, gb: &GroebnerBasis) -> std::io::Result<()> {
    let mut body = format!("{HEADER} {key}\n");
    for g in gb.basis() {
        body.push_str(&g.to_string());
        body.push('\n');
    }
    let tmp = dir.join(format!(".{key}.{}.{:?}.tmp", std::process::id(), std::thread::current().id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(body.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, entry_path(dir, key))
}

/// Loads an entry; corrupt or mismatched entries are reported and ignored.
pub fn load(dir: &Path, key: &str, ring: &RingContext, order: &TermOrder) -> Option<GroebnerBasis> {
    let path = entry_path(dir, key);
    let text = fs::read_to_string(&path).ok()?;
    match parse_entry(&text, key, ring, order) {
        Ok(gb) => Some(gb),
        Err(why) => {
            warn!("ignoring corrupt cache entry {}: {why}", path.display());
            None
        }
    }
}

fn parse_entry(text: &str, key: &str, ring: &RingContext, order: &TermOrder) -> std::result::Result<GroebnerBasis, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty file")?;
    let digest = header
        .strip_prefix(HEADER)
        .map(str::trim)
        .ok_or_else(|| format!("bad header `{header}`"))?;
    if digest != key {
        return Err(format!("digest mismatch: {digest}"));
    }
    let engine = engine_for(ring, order, false).map_err(|e| e.to_string())?;
    let mut vectors = Vec::new();
    for line in lines.filter(|l| !l.trim().is_empty()) {
        let p = Polynomial::parse(ring, line).map_err(|e| e.to_string())?;
        if p.is_zero() {
            return Err("zero polynomial in basis".into());
        }
        let v = to_vector(&engine, &p);
        if v.lead().c != 1 {
            return Err("basis element is not monic".into());
        }
        vectors.push(v);
    }
    if vectors.is_empty() {
        return Err("no basis elements".into());
    }
    Ok(GroebnerBasis::from_vectors(ring, order, vectors, key.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone_ideal() -> IdealSpec {
        let r = RingContext::new(2, &["x", "y", "z"]).unwrap().with_relations(&["x^3+y^3+z^3"]).unwrap();
        IdealSpec::from_strs(&r, &["y^2", "z^2"]).unwrap()
    }

    #[test]
    fn store_then_load_is_identity() {
        let dir = tempfile::tempdir().unwrap();
        let ideal = cone_ideal();
        let order = TermOrder::grevlex(3);
        let gb = buchberger(&ideal, &order).unwrap();
        let key = GbCache::key_for(&ideal, &order);
        store(dir.path(), &key, &gb).unwrap();
        let back = load(dir.path(), &key, ideal.ring(), &order).unwrap();
        assert_eq!(back, gb);
        let text = fs::read_to_string(entry_path(dir.path(), &key)).unwrap();
        assert!(text.starts_with(&format!("tckit-gb v1 {key}\n")));
    }

    #[test]
    fn digest_mismatch_and_garbage_are_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let ideal = cone_ideal();
        let order = TermOrder::grevlex(3);
        let key = GbCache::key_for(&ideal, &order);
        fs::write(entry_path(dir.path(), &key), "tckit-gb v1 deadbeef\nx\n").unwrap();
        assert!(load(dir.path(), &key, ideal.ring(), &order).is_none());
        fs::write(entry_path(dir.path(), &key), format!("tckit-gb v1 {key}\nx +* y\n")).unwrap();
        assert!(load(dir.path(), &key, ideal.ring(), &order).is_none());

        // the cache recomputes and overwrites the bad entry
        let cache = GbCache::new();
        assert!(cache.set_dir(Some(dir.path())));
        let gb = cache.get_or_compute(&ideal, &order).unwrap();
        assert_eq!(*gb, buchberger(&ideal, &order).unwrap());
        assert!(load(dir.path(), &key, ideal.ring(), &order).is_some());
    }

    #[test]
    fn concurrent_writers_agree() {
        let dir = tempfile::tempdir().unwrap();
        let ideal = cone_ideal();
        let order = TermOrder::grevlex(3);
        let key = GbCache::key_for(&ideal, &order);
        std::thread::scope(|s| {
            for _ in 0..4 {
                s.spawn(|| {
                    let cache = GbCache::new();
                    cache.set_dir(Some(dir.path()));
                    cache.get_or_compute(&ideal, &order).unwrap();
                });
            }
        });
        let back = load(dir.path(), &key, ideal.ring(), &order).unwrap();
        assert_eq!(back, buchberger(&ideal, &order).unwrap());
    }

    #[test]
    fn unwritable_dir_disables_disk_layer() {
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("not-a-dir");
        fs::write(&file, "").unwrap();
        let cache = GbCache::new();
        assert!(!cache.set_dir(Some(&file)));
        assert!(cache.dir().is_none());
        assert!(cache.get_or_compute(&cone_ideal(), &TermOrder::grevlex(3)).is_ok());
    }
}
