use rand::Rng;

/// Number of classical samples QSearch draws before going coherent.
///
/// Starts each phase at `init`. In the default mode every simulated draw
/// is an actual seeded draw; `init` consecutive misses switch sampling off
/// for the rest of the phase. The deterministic mode switches off instead
/// once the marked fraction of a searched list drops to `1/init` or below.
#[derive(Debug, Clone)]
pub struct NsamplesPolicy {
    init: u32,
    current: u32,
    misses: u32,
    deterministic: bool,
}

impl NsamplesPolicy {
    pub fn new(init: u32, deterministic: bool) -> Self {
        NsamplesPolicy {
            init,
            current: init,
            misses: 0,
            deterministic,
        }
    }

    pub fn reset(&mut self) {
        self.current = self.init;
        self.misses = 0;
    }

    pub fn current(&self) -> u32 {
        self.current
    }

    pub fn consecutive_misses(&self) -> u32 {
        self.misses
    }

    /// Records the outcome of one classical draw.
    pub fn observe(&mut self, marked: bool) {
        if self.current == 0 {
            return;
        }
        if marked {
            self.misses = 0;
        } else {
            self.misses += 1;
            if self.misses >= self.init {
                self.current = 0;
            }
        }
    }

    /// Plays the classical sampling stage of one search over a list with
    /// `t` of `len` items marked. `draw` picks a random item and reports
    /// whether it is marked; sampling stops at the first hit.
    pub fn simulate_search<R: Rng + ?Sized>(
        &mut self,
        rng: &mut R,
        t: usize,
        len: usize,
        mut draw: impl FnMut(&mut R) -> bool,
    ) {
        if self.deterministic {
            if self.current > 0 && len > 0 && (t as f64) * (self.init as f64) <= len as f64 {
                self.current = 0;
            }
            return;
        }
        for _ in 0..self.current {
            let hit = if t == 0 { false } else { draw(rng) };
            self.observe(hit);
            if hit || self.current == 0 {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trigger_after_init_misses() {
        let mut p = NsamplesPolicy::new(130, false);
        for _ in 0..129 {
            p.observe(false);
        }
        assert_eq!(p.current(), 130);
        p.observe(true);
        assert_eq!(p.consecutive_misses(), 0);
        for _ in 0..130 {
            p.observe(false);
        }
        assert_eq!(p.current(), 0);
        p.observe(true);
        assert_eq!(p.current(), 0);
        p.reset();
        assert_eq!(p.current(), 130);
    }

    #[test]
    fn empty_list_switches_off() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut p = NsamplesPolicy::new(130, false);
        p.simulate_search(&mut rng, 0, 1000, |_| unreachable!());
        assert_eq!(p.current(), 0);
        let mut d = NsamplesPolicy::new(130, true);
        d.simulate_search(&mut rng, 10, 1000, |_| true);
        assert_eq!(d.current(), 130);
        d.simulate_search(&mut rng, 1, 130, |_| true);
        assert_eq!(d.current(), 0);
    }
}
