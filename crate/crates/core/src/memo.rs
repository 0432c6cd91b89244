//! Append-only memo tables safe for concurrent readers.
//!
//! Each key is computed at most once: concurrent requests for the same key
//! block on a per-key cell while unrelated keys proceed.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, OnceLock, RwLock};

pub struct Memo<K, V> {
    map: RwLock<HashMap<K, Arc<OnceLock<V>>>>,
}

impl<K: Eq + Hash + Clone, V: Clone> Memo<K, V> {
    pub fn new() -> Self {
        Memo {
            map: RwLock::new(HashMap::new()),
        }
    }

    fn cell(&self, key: &K) -> Arc<OnceLock<V>> {
        if let Some(c) = self.map.read().unwrap().get(key) {
            return c.clone();
        }
        self.map
            .write()
            .unwrap()
            .entry(key.clone())
            .or_default()
            .clone()
    }

    /// `f` may itself consult the table, as long as it never asks for `key`.
    pub fn get_or_compute(&self, key: &K, f: impl FnOnce() -> V) -> V {
        self.cell(key).get_or_init(f).clone()
    }

    pub fn get(&self, key: &K) -> Option<V> {
        self.map.read().unwrap().get(key)?.get().cloned()
    }

    /// Seed a value; ignored if the key is already populated.
    pub fn insert(&self, key: K, value: V) {
        let _ = self.cell(&key).set(value);
    }

    pub fn snapshot(&self) -> Vec<(K, V)> {
        self.map
            .read()
            .unwrap()
            .iter()
            .filter_map(|(k, c)| c.get().map(|v| (k.clone(), v.clone())))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn clear(&self) {
        self.map.write().unwrap().clear();
    }
}

impl<K: Eq + Hash + Clone, V: Clone> Default for Memo<K, V> {
    fn default() -> Self {
        Memo::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::atomic::{AtomicUsize, Ordering};

    #[test]
    fn computes_once_across_threads() {
        let memo: Memo<u32, u64> = Memo::new();
        let calls = AtomicUsize::new(0);
        std::thread::scope(|s| {
            for _ in 0..8 {
                s.spawn(|| {
                    let v = memo.get_or_compute(&7, || {
                        calls.fetch_add(1, Ordering::SeqCst);
                        49
                    });
                    assert_eq!(v, 49);
                });
            }
        });
        assert_eq!(calls.load(Ordering::SeqCst), 1);
        assert_eq!(memo.get(&7), Some(49));
    }

    #[test]
    fn recursive_use() {
        fn fib(m: &Memo<u64, u64>, n: u64) -> u64 {
            if n < 2 {
                return n;
            }
            m.get_or_compute(&n, || fib(m, n - 1) + fib(m, n - 2))
        }
        let m = Memo::new();
        assert_eq!(fib(&m, 80), 23416728348467685);
    }
}
