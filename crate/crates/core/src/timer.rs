use core::time::Duration;

/// Wall clock stopwatch. Without `std` it always reads zero and never expires.
#[derive(Clone, Copy)]
pub(crate) struct Stopwatch {
    #[cfg(feature = "std")]
    start: std::time::Instant,
    limit: Option<Duration>,
}

impl Stopwatch {
    pub(crate) fn start(limit: Option<Duration>) -> Self {
        Stopwatch {
            #[cfg(feature = "std")]
            start: std::time::Instant::now(),
            limit,
        }
    }

    pub(crate) fn elapsed(&self) -> Duration {
        #[cfg(feature = "std")]
        {
            self.start.elapsed()
        }
        #[cfg(not(feature = "std"))]
        {
            Duration::ZERO
        }
    }

    pub(crate) fn expired(&self) -> bool {
        match self.limit {
            Some(limit) => self.elapsed() > limit,
            None => false,
        }
    }
}
