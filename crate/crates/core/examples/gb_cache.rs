//! The on-disk Gröbner basis cache shared by command line runs.

use tckit::groebner::GbCache;
use tckit::{IdealSpec, RingContext, TermOrder};

fn main() -> tckit::Result<()> {
    let dir = std::env::temp_dir().join(format!("tckit-cache-example-{}", std::process::id()));
    let cache = GbCache::new();
    cache.set_dir(Some(&dir));

    let r = RingContext::new(3, &["x", "y", "z"])?.with_relations(&["x^3 + y^3 + z^3"])?;
    let i = IdealSpec::parse(&r, "(y^9, z^9)")?;
    let order = TermOrder::grevlex(3);
    let gb = cache.get_or_compute(&i, &order)?;
    println!("{} basis elements, key {}", gb.basis().len(), GbCache::key_for(&i, &order));

    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let head = std::fs::read_to_string(&path).unwrap();
        println!("{}: {}", path.display(), head.lines().next().unwrap_or(""));
    }

    // a fresh cache reads the file back instead of recomputing
    let warm = GbCache::new();
    warm.set_dir(Some(&dir));
    assert_eq!(*warm.get_or_compute(&i, &order)?, *gb);
    std::fs::remove_dir_all(&dir).ok();
    Ok(())
}
