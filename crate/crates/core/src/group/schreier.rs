//! Stabilizer chains by deterministic Schreier–Sims, for permutation groups
//! too large to enumerate.

use rand::Rng;
use rustc_hash::FxHashSet;

use super::Perm;

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    /// Strong generators fixing every earlier base point.
    gens: Vec<Perm>,
    /// `trans[q]` carries `point` to `q`, for `q` in the orbit.
    trans: Vec<Option<Perm>>,
    orbit: Vec<usize>,
    /// Schreier generators `(orbit position, generator index)` already
    /// shown to strip through the levels below.
    checked: FxHashSet<(u32, u32)>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Self {
        let mut trans = vec![None; degree];
        trans[point] = Some(Perm::identity(degree));
        Level { point, gens: Vec::new(), trans, orbit: vec![point], checked: FxHashSet::default() }
    }

    /// Extends the orbit and transversal; existing entries never change,
    /// so Schreier generators checked earlier stay valid.
    fn grow_orbit(&mut self) {
        let mut i = 0;
        while i < self.orbit.len() {
            let q = self.orbit[i];
            i += 1;
            let tq = self.trans[q].clone().expect("orbit point has a transversal");
            for g in &self.gens {
                let r = g.apply(q);
                if self.trans[r].is_none() {
                    self.trans[r] = Some(tq.mul(g));
                    self.orbit.push(r);
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, gens: &[Perm]) -> Self {
        let mut chain = StabChain { degree, levels: Vec::new() };
        let gens: Vec<&Perm> = gens.iter().filter(|g| !g.is_identity()).collect();
        for g in &gens {
            if chain.levels.iter().all(|l| g.apply(l.point) == l.point) {
                chain.push_level(g);
            }
        }
        for g in gens {
            chain.add_strong(g.clone(), 0, usize::MAX);
        }
        chain.complete();
        chain
    }

    fn push_level(&mut self, g: &Perm) {
        let point = (0..self.degree).find(|&x| g.apply(x) != x).expect("non-identity element");
        self.levels.push(Level::new(point, self.degree));
    }

    /// Puts `h` into the generating sets of levels `from..=to` (clamped to
    /// the levels whose earlier base points `h` fixes), opening a new level
    /// when `h` fixes the whole base.
    fn add_strong(&mut self, h: Perm, from: usize, to: usize) {
        let mut last = from;
        while last < self.levels.len() && last < to && h.apply(self.levels[last].point) == self.levels[last].point {
            last += 1;
        }
        if last == self.levels.len() {
            self.push_level(&h);
        }
        let last = last.min(self.levels.len() - 1);
        for l in from..=last {
            self.levels[l].gens.push(h.clone());
            self.levels[l].grow_orbit();
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Strips `g` through levels `from..`; returns the residue and the level
    /// where stripping stopped (`levels.len()` when it went through).
    fn strip(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for (i, l) in self.levels.iter().enumerate().skip(from) {
            let q = g.apply(l.point);
            match &l.trans[q] {
                Some(t) => g = g.mul(&t.inverse()),
                None => return (g, i),
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (r, _) = self.strip(g.clone(), 0);
        r.is_identity()
    }

    /// A Schreier generator of level `i` that fails to strip, as its
    /// residue and the level where it stopped.
    fn failing_schreier(&mut self, i: usize) -> Option<(Perm, usize)> {
        let mut k = 0;
        while k < self.levels[i].orbit.len() {
            let q = self.levels[i].orbit[k];
            for m in 0..self.levels[i].gens.len() {
                if !self.levels[i].checked.insert((k as u32, m as u32)) {
                    continue;
                }
                let lv = &self.levels[i];
                let s = &lv.gens[m];
                let tq = lv.trans[q].as_ref().unwrap();
                let tqs = lv.trans[s.apply(q)].as_ref().unwrap();
                let sch = tq.mul(s).mul(&tqs.inverse());
                if sch.is_identity() {
                    continue;
                }
                let (r, stop) = self.strip(sch, i + 1);
                if !r.is_identity() {
                    return Some((r, stop));
                }
            }
            k += 1;
        }
        None
    }

    fn complete(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            let lvl = i - 1;
            match self.failing_schreier(lvl) {
                Some((h, stop)) => {
                    self.add_strong(h, lvl + 1, stop);
                    i = self.levels.len().min(stop + 1);
                }
                None => i -= 1,
            }
        }
    }

    /// A uniformly random element, as a product of random transversal
    /// elements from the bottom level up.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Perm {
        let mut g = Perm::identity(self.degree);
        for l in self.levels.iter().rev() {
            let q = l.orbit[rng.gen_range(0..l.orbit.len())];
            g = g.mul(l.trans[q].as_ref().unwrap());
        }
        g
    }
}
