use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex, OnceLock};

/// A concurrent get-or-build map: each key's value is built exactly once,
/// and concurrent callers for the same key wait for that single build.
pub struct OnceMap<K, V> {
    slots: Mutex<HashMap<K, Arc<OnceLock<Arc<V>>>>>,
}

impl<K: Eq + Hash + Clone, V> OnceMap<K, V> {
    pub fn new() -> Self {
        OnceMap {
            slots: Mutex::new(HashMap::new()),
        }
    }

    pub fn get_or_build(&self, key: &K, build: impl FnOnce() -> V) -> Arc<V> {
        let slot = {
            let mut slots = self.slots.lock().unwrap();
            slots.entry(key.clone()).or_default().clone()
        };
        // the map lock is released here so unrelated keys can build concurrently
        slot.get_or_init(|| Arc::new(build())).clone()
    }

    pub fn get(&self, key: &K) -> Option<Arc<V>> {
        let slots = self.slots.lock().unwrap();
        slots.get(key).and_then(|s| s.get().cloned())
    }

    /// Inserts a prebuilt value unless one already exists.
    pub fn insert(&self, key: K, value: V) -> Arc<V> {
        self.get_or_build(&key, || value)
    }

    #[cfg(test)]
    fn len(&self) -> usize {
        let slots = self.slots.lock().unwrap();
        slots.values().filter(|s| s.get().is_some()).count()
    }
}

impl<K: Eq + Hash + Clone, V> Default for OnceMap<K, V> {
    fn default() -> Self {
        OnceMap::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::atomic::{AtomicUsize, Ordering};

    #[test]
    fn builds_each_key_once_under_contention() {
        let map: OnceMap<u32, u32> = OnceMap::new();
        let builds = AtomicUsize::new(0);
        std::thread::scope(|s| {
            for _ in 0..16 {
                s.spawn(|| {
                    for k in 0..8 {
                        let v = map.get_or_build(&k, || {
                            builds.fetch_add(1, Ordering::SeqCst);
                            std::thread::sleep(std::time::Duration::from_millis(2));
                            k * 10
                        });
                        assert_eq!(*v, k * 10);
                    }
                });
            }
        });
        assert_eq!(builds.load(Ordering::SeqCst), 8);
        assert_eq!(map.len(), 8);
    }
}
