//! Cooperative time budgets. Long-running kernel loops poll a thread-local
//! deadline so callers (the stress harness) can bound a single computation
//! without killing threads.

use std::cell::Cell;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

thread_local! {
    static DEADLINE: Cell<Option<Instant>> = const { Cell::new(None) };
}

/// Runs `f` under a deadline on the current thread. Kernel loops return
/// `Error::Timeout` once the deadline passes. Nesting keeps the tighter
/// deadline.
pub fn with_deadline<T>(budget: Duration, f: impl FnOnce() -> T) -> T {
    let new = Instant::now() + budget;
    let prev = DEADLINE.with(|d| {
        let prev = d.get();
        let eff = match prev {
            Some(p) => p.min(new),
            None => new,
        };
        d.set(Some(eff));
        prev
    });
    let out = f();
    DEADLINE.with(|d| d.set(prev));
    out
}

/// Cheap poll; call from the head of long-running loops.
#[inline]
pub fn check_deadline() -> Result<()> {
    DEADLINE.with(|d| match d.get() {
        Some(t) if Instant::now() >= t => Err(Error::Timeout),
        _ => Ok(()),
    })
}
