//! Wall-clock budgets for exhaustive searches.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// An optional point in time after which searches give up with [`Error::Deadline`].
#[derive(Clone, Copy, Debug, Default)]
pub struct Deadline(Option<Instant>);

impl Deadline {
    pub fn none() -> Self {
        Deadline(None)
    }

    pub fn after(budget: Duration) -> Self {
        Deadline(Some(Instant::now() + budget))
    }

    pub fn from_secs(secs: Option<f64>) -> Self {
        match secs {
            Some(s) => Deadline::after(Duration::from_secs_f64(s.max(0.0))),
            None => Deadline::none(),
        }
    }

    pub fn expired(&self) -> bool {
        matches!(self.0, Some(t) if Instant::now() >= t)
    }

    pub fn check(&self) -> Result<()> {
        if self.expired() {
            Err(Error::Deadline)
        } else {
            Ok(())
        }
    }
}

/// Amortises clock reads inside hot loops.
#[derive(Debug)]
pub(crate) struct Ticker {
    deadline: Deadline,
    count: u32,
}

impl Ticker {
    pub(crate) fn new(deadline: Deadline) -> Self {
        Ticker { deadline, count: 0 }
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.count = self.count.wrapping_add(1);
        if self.count.is_multiple_of(1024) {
            self.deadline.check()
        } else {
            Ok(())
        }
    }
}
