use std::num::NonZeroUsize;
use std::sync::{Arc, LazyLock, Mutex};

use lru::LruCache;

use crate::counts::ClassCounts;
use crate::group::Group;

use super::graph::GraphKey;

/// Entries kept by the shared count cache.
pub const MEMO_CAPACITY: usize = 4096;

type Key = (Group, GraphKey, usize);

static MEMO: LazyLock<Mutex<LruCache<Key, Arc<ClassCounts>>>> =
    LazyLock::new(|| Mutex::new(LruCache::new(NonZeroUsize::new(MEMO_CAPACITY).unwrap())));

/// Looks up `key`, computing and inserting it on a miss. Returns the value
/// and whether it was a hit. The lock is not held while computing; two
/// racing misses compute the same value and the later insert wins.
pub(crate) fn get_or_compute<E>(
    key: Key,
    f: impl FnOnce() -> Result<ClassCounts, E>,
) -> Result<(Arc<ClassCounts>, bool), E> {
    if let Some(v) = MEMO.lock().unwrap().get(&key) {
        return Ok((v.clone(), true));
    }
    let v = Arc::new(f()?);
    MEMO.lock().unwrap().put(key, v.clone());
    Ok((v, false))
}

/// Empties the shared count cache.
pub fn clear_memo() {
    MEMO.lock().unwrap().clear();
}
