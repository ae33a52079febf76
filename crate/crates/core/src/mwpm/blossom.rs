// Primal-dual blossom algorithm for maximum-weight matching in general graphs,
// restricted here to maximum-cardinality solutions. Structure follows Joris
// van Rantwijk's well-known formulation of Galil's presentation of Edmonds'
// method. O(V^3).
//
// Vertices are 0..nv. Non-trivial blossoms are numbered nv..2*nv.
// Edge k has endpoints 2k and 2k+1. Vertex duals are stored doubled so that
// every quantity stays integral for integer weights.

const NONE: usize = usize::MAX;

const FREE: usize = 0;
const S: usize = 1;
const T: usize = 2;
const BREADCRUMB: usize = 4;

pub(crate) struct Solver<'a> {
    nv: usize,
    edges: &'a [(usize, usize, i64)],
    endpoint: Vec<usize>,
    neighbend: Vec<Vec<usize>>,
    mate: Vec<usize>,
    label: Vec<usize>,
    labelend: Vec<usize>,
    inblossom: Vec<usize>,
    blossomparent: Vec<usize>,
    blossomchilds: Vec<Vec<usize>>,
    blossombase: Vec<usize>,
    blossomendps: Vec<Vec<usize>>,
    bestedge: Vec<usize>,
    blossombestedges: Vec<Option<Vec<usize>>>,
    unusedblossoms: Vec<usize>,
    dualvar: Vec<i64>,
    allowedge: Vec<bool>,
    queue: Vec<usize>,
}

#[inline]
fn at(v: &[usize], j: isize) -> usize {
    v[j.rem_euclid(v.len() as isize) as usize]
}

impl<'a> Solver<'a> {
    pub(crate) fn new(nv: usize, edges: &'a [(usize, usize, i64)]) -> Self {
        let ne = edges.len();
        let maxweight = edges.iter().map(|e| e.2).max().unwrap_or(0).max(0);
        let endpoint = (0..2 * ne)
            .map(|p| if p % 2 == 0 { edges[p / 2].0 } else { edges[p / 2].1 })
            .collect();
        let mut neighbend = vec![Vec::new(); nv];
        for (k, &(i, j, _)) in edges.iter().enumerate() {
            neighbend[i].push(2 * k + 1);
            neighbend[j].push(2 * k);
        }
        let mut blossombase: Vec<usize> = (0..nv).collect();
        blossombase.extend(std::iter::repeat_n(NONE, nv));
        let mut dualvar = vec![2 * maxweight; nv];
        dualvar.extend(std::iter::repeat_n(0, nv));
        // Weights enter `slack` doubled, so vertex duals start at 2*maxweight.
        Solver {
            nv,
            edges,
            endpoint,
            neighbend,
            mate: vec![NONE; nv],
            label: vec![FREE; 2 * nv],
            labelend: vec![NONE; 2 * nv],
            inblossom: (0..nv).collect(),
            blossomparent: vec![NONE; 2 * nv],
            blossomchilds: vec![Vec::new(); 2 * nv],
            blossombase,
            blossomendps: vec![Vec::new(); 2 * nv],
            bestedge: vec![NONE; 2 * nv],
            blossombestedges: vec![None; 2 * nv],
            unusedblossoms: (nv..2 * nv).collect(),
            dualvar,
            allowedge: vec![false; ne],
            queue: Vec::new(),
        }
    }

    /// Twice the slack of edge k, in the doubled scale.
    #[inline]
    fn slack(&self, k: usize) -> i64 {
        let (i, j, wt) = self.edges[k];
        self.dualvar[i] + self.dualvar[j] - 4 * wt
    }

    fn blossom_leaves(&self, b: usize, out: &mut Vec<usize>) {
        if b < self.nv {
            out.push(b);
        } else {
            for &t in &self.blossomchilds[b] {
                self.blossom_leaves(t, out);
            }
        }
    }

    fn leaves(&self, b: usize) -> Vec<usize> {
        let mut out = Vec::new();
        self.blossom_leaves(b, &mut out);
        out
    }

    fn assign_label(&mut self, w: usize, t: usize, p: usize) {
        let b = self.inblossom[w];
        debug_assert!(self.label[w] == FREE && self.label[b] == FREE);
        self.label[w] = t;
        self.label[b] = t;
        self.labelend[w] = p;
        self.labelend[b] = p;
        self.bestedge[w] = NONE;
        self.bestedge[b] = NONE;
        if t == S {
            let leaves = self.leaves(b);
            self.queue.extend(leaves);
        } else {
            // T-blossom: its base is the only vertex with an external mate.
            let base = self.blossombase[b];
            debug_assert!(self.mate[base] != NONE);
            let mbase = self.mate[base];
            self.assign_label(self.endpoint[mbase], S, mbase ^ 1);
        }
    }

    /// Walks back from v and w; returns the base of a new blossom, or NONE
    /// if the two trees are distinct (augmenting path).
    fn scan_blossom(&mut self, mut v: usize, mut w: usize) -> usize {
        let mut path = Vec::new();
        let mut base = NONE;
        while v != NONE || w != NONE {
            let mut b = self.inblossom[v];
            if self.label[b] & BREADCRUMB != 0 {
                base = self.blossombase[b];
                break;
            }
            debug_assert_eq!(self.label[b], S);
            path.push(b);
            self.label[b] = S | BREADCRUMB;
            debug_assert_eq!(self.labelend[b], self.mate[self.blossombase[b]]);
            if self.labelend[b] == NONE {
                v = NONE;
            } else {
                v = self.endpoint[self.labelend[b]];
                b = self.inblossom[v];
                debug_assert_eq!(self.label[b], T);
                v = self.endpoint[self.labelend[b]];
            }
            if w != NONE {
                std::mem::swap(&mut v, &mut w);
            }
        }
        for b in path {
            self.label[b] = S;
        }
        base
    }

    fn add_blossom(&mut self, base: usize, k: usize) {
        let (mut v, mut w, _) = self.edges[k];
        let bb = self.inblossom[base];
        let mut bv = self.inblossom[v];
        let mut bw = self.inblossom[w];
        let b = self.unusedblossoms.pop().expect("blossom pool exhausted");
        self.blossombase[b] = base;
        self.blossomparent[b] = NONE;
        self.blossomparent[bb] = b;

        let mut childs = Vec::new();
        let mut endps = Vec::new();
        while bv != bb {
            self.blossomparent[bv] = b;
            childs.push(bv);
            endps.push(self.labelend[bv]);
            v = self.endpoint[self.labelend[bv]];
            bv = self.inblossom[v];
        }
        childs.push(bb);
        childs.reverse();
        endps.reverse();
        endps.push(2 * k);
        while bw != bb {
            self.blossomparent[bw] = b;
            childs.push(bw);
            endps.push(self.labelend[bw] ^ 1);
            w = self.endpoint[self.labelend[bw]];
            bw = self.inblossom[w];
        }
        debug_assert_eq!(self.label[bb], S);
        self.label[b] = S;
        self.labelend[b] = self.labelend[bb];
        self.dualvar[b] = 0;
        self.blossomchilds[b] = childs;
        self.blossomendps[b] = endps;

        for v in self.leaves(b) {
            if self.label[self.inblossom[v]] == T {
                self.queue.push(v);
            }
            self.inblossom[v] = b;
        }

        // Least-slack edges from the new blossom to each neighbouring S-blossom.
        let mut bestedgeto = vec![NONE; 2 * self.nv];
        for &sub in &self.blossomchilds[b] {
            let lists: Vec<Vec<usize>> = match &self.blossombestedges[sub] {
                Some(list) => vec![list.clone()],
                None => self
                    .leaves(sub)
                    .into_iter()
                    .map(|v| self.neighbend[v].iter().map(|p| p / 2).collect())
                    .collect(),
            };
            for k in lists.into_iter().flatten() {
                let (mut i, mut j, _) = self.edges[k];
                if self.inblossom[j] == b {
                    std::mem::swap(&mut i, &mut j);
                }
                let bj = self.inblossom[j];
                if bj != b
                    && self.label[bj] == S
                    && (bestedgeto[bj] == NONE || self.slack(k) < self.slack(bestedgeto[bj]))
                {
                    bestedgeto[bj] = k;
                }
            }
        }
        for &sub in &self.blossomchilds[b].clone() {
            self.blossombestedges[sub] = None;
            self.bestedge[sub] = NONE;
        }
        let list: Vec<usize> = bestedgeto.into_iter().filter(|&k| k != NONE).collect();
        let mut best = NONE;
        for &k in &list {
            if best == NONE || self.slack(k) < self.slack(best) {
                best = k;
            }
        }
        self.blossombestedges[b] = Some(list);
        self.bestedge[b] = best;
    }

    fn expand_blossom(&mut self, b: usize, endstage: bool) {
        for s in self.blossomchilds[b].clone() {
            self.blossomparent[s] = NONE;
            if s < self.nv {
                self.inblossom[s] = s;
            } else if endstage && self.dualvar[s] == 0 {
                self.expand_blossom(s, endstage);
            } else {
                for v in self.leaves(s) {
                    self.inblossom[v] = s;
                }
            }
        }

        if !endstage && self.label[b] == T {
            // Relabel sub-blossoms from the entry child around to the base.
            let entrychild = self.inblossom[self.endpoint[self.labelend[b] ^ 1]];
            let len = self.blossomchilds[b].len() as isize;
            let mut j = self.blossomchilds[b]
                .iter()
                .position(|&c| c == entrychild)
                .expect("entry child belongs to blossom") as isize;
            let (jstep, endptrick): (isize, usize) = if j & 1 != 0 {
                j -= len;
                (1, 0)
            } else {
                (-1, 1)
            };
            let mut p = self.labelend[b];
            while j != 0 {
                self.label[self.endpoint[p ^ 1]] = FREE;
                let q = at(&self.blossomendps[b], j - endptrick as isize);
                self.label[self.endpoint[q ^ endptrick ^ 1]] = FREE;
                self.assign_label(self.endpoint[p ^ 1], T, p);
                self.allowedge[q / 2] = true;
                j += jstep;
                p = at(&self.blossomendps[b], j - endptrick as isize) ^ endptrick;
                self.allowedge[p / 2] = true;
                j += jstep;
            }
            let bv = at(&self.blossomchilds[b], j);
            let ep = self.endpoint[p ^ 1];
            self.label[ep] = T;
            self.label[bv] = T;
            self.labelend[ep] = p;
            self.labelend[bv] = p;
            self.bestedge[bv] = NONE;
            j += jstep;
            while at(&self.blossomchilds[b], j) != entrychild {
                let bv = at(&self.blossomchilds[b], j);
                if self.label[bv] == S {
                    j += jstep;
                    continue;
                }
                let reached = self.leaves(bv).into_iter().find(|&v| self.label[v] != FREE);
                if let Some(v) = reached {
                    debug_assert_eq!(self.label[v], T);
                    debug_assert_eq!(self.inblossom[v], bv);
                    self.label[v] = FREE;
                    let m = self.endpoint[self.mate[self.blossombase[bv]]];
                    self.label[m] = FREE;
                    self.assign_label(v, T, self.labelend[v]);
                }
                j += jstep;
            }
        }

        self.label[b] = NONE;
        self.labelend[b] = NONE;
        self.blossomchilds[b].clear();
        self.blossomendps[b].clear();
        self.blossombase[b] = NONE;
        self.blossombestedges[b] = None;
        self.bestedge[b] = NONE;
        self.unusedblossoms.push(b);
    }

    /// Flips matched/unmatched edges along the path from v to the base of b.
    fn augment_blossom(&mut self, b: usize, v: usize) {
        let mut t = v;
        while self.blossomparent[t] != b {
            t = self.blossomparent[t];
        }
        if t >= self.nv {
            self.augment_blossom(t, v);
        }
        let len = self.blossomchilds[b].len() as isize;
        let i = self.blossomchilds[b]
            .iter()
            .position(|&c| c == t)
            .expect("child belongs to blossom");
        let mut j = i as isize;
        let (jstep, endptrick): (isize, usize) = if i & 1 != 0 {
            j -= len;
            (1, 0)
        } else {
            (-1, 1)
        };
        while j != 0 {
            j += jstep;
            let t = at(&self.blossomchilds[b], j);
            let p = at(&self.blossomendps[b], j - endptrick as isize) ^ endptrick;
            if t >= self.nv {
                self.augment_blossom(t, self.endpoint[p]);
            }
            j += jstep;
            let t = at(&self.blossomchilds[b], j);
            if t >= self.nv {
                self.augment_blossom(t, self.endpoint[p ^ 1]);
            }
            self.mate[self.endpoint[p]] = p ^ 1;
            self.mate[self.endpoint[p ^ 1]] = p;
        }
        self.blossomchilds[b].rotate_left(i);
        self.blossomendps[b].rotate_left(i);
        self.blossombase[b] = self.blossombase[self.blossomchilds[b][0]];
        debug_assert_eq!(self.blossombase[b], v);
    }

    fn augment_matching(&mut self, k: usize) {
        let (v, w, _) = self.edges[k];
        for (mut s, mut p) in [(v, 2 * k + 1), (w, 2 * k)] {
            loop {
                let bs = self.inblossom[s];
                debug_assert_eq!(self.label[bs], S);
                if bs >= self.nv {
                    self.augment_blossom(bs, s);
                }
                self.mate[s] = p;
                if self.labelend[bs] == NONE {
                    break;
                }
                let t = self.endpoint[self.labelend[bs]];
                let bt = self.inblossom[t];
                debug_assert_eq!(self.label[bt], T);
                s = self.endpoint[self.labelend[bt]];
                let j = self.endpoint[self.labelend[bt] ^ 1];
                debug_assert_eq!(self.blossombase[bt], t);
                if bt >= self.nv {
                    self.augment_blossom(bt, j);
                }
                self.mate[j] = self.labelend[bt];
                p = self.labelend[bt] ^ 1;
            }
        }
    }

    /// Runs to completion and returns `mate[v]` (partner vertex or `None`).
    pub(crate) fn solve(mut self) -> Vec<Option<usize>> {
        let nv = self.nv;
        if self.edges.is_empty() {
            return vec![None; nv];
        }
        for _stage in 0..nv {
            self.label.iter_mut().for_each(|l| *l = FREE);
            self.bestedge.iter_mut().for_each(|e| *e = NONE);
            for b in nv..2 * nv {
                self.blossombestedges[b] = None;
            }
            self.allowedge.iter_mut().for_each(|a| *a = false);
            self.queue.clear();
            for v in 0..nv {
                if self.mate[v] == NONE && self.label[self.inblossom[v]] == FREE {
                    self.assign_label(v, S, NONE);
                }
            }

            let mut augmented = false;
            loop {
                while !augmented {
                    let Some(v) = self.queue.pop() else { break };
                    debug_assert_eq!(self.label[self.inblossom[v]], S);
                    for idx in 0..self.neighbend[v].len() {
                        let p = self.neighbend[v][idx];
                        let k = p / 2;
                        let w = self.endpoint[p];
                        if self.inblossom[v] == self.inblossom[w] {
                            continue;
                        }
                        let mut kslack = 0;
                        if !self.allowedge[k] {
                            kslack = self.slack(k);
                            if kslack <= 0 {
                                self.allowedge[k] = true;
                            }
                        }
                        if self.allowedge[k] {
                            if self.label[self.inblossom[w]] == FREE {
                                self.assign_label(w, T, p ^ 1);
                            } else if self.label[self.inblossom[w]] == S {
                                let base = self.scan_blossom(v, w);
                                if base != NONE {
                                    self.add_blossom(base, k);
                                } else {
                                    self.augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if self.label[w] == FREE {
                                debug_assert_eq!(self.label[self.inblossom[w]], T);
                                self.label[w] = T;
                                self.labelend[w] = p ^ 1;
                            }
                        } else if self.label[self.inblossom[w]] == S {
                            let b = self.inblossom[v];
                            if self.bestedge[b] == NONE || kslack < self.slack(self.bestedge[b]) {
                                self.bestedge[b] = k;
                            }
                        } else if self.label[w] == FREE
                            && (self.bestedge[w] == NONE || kslack < self.slack(self.bestedge[w]))
                        {
                            self.bestedge[w] = k;
                        }
                    }
                }
                if augmented {
                    break;
                }

                // No augmenting path under the current duals: pick the
                // smallest dual adjustment that creates a new tight edge.
                #[derive(PartialEq)]
                enum Step {
                    Done,
                    Grow(usize),
                    Merge(usize),
                    Expand(usize),
                }
                let mut step: Option<Step> = None;
                let mut delta = 0i64;
                for v in 0..nv {
                    if self.label[self.inblossom[v]] == FREE && self.bestedge[v] != NONE {
                        let d = self.slack(self.bestedge[v]);
                        if step.is_none() || d < delta {
                            delta = d;
                            step = Some(Step::Grow(self.bestedge[v]));
                        }
                    }
                }
                for b in 0..2 * nv {
                    if self.blossomparent[b] == NONE && self.label[b] == S && self.bestedge[b] != NONE {
                        let kslack = self.slack(self.bestedge[b]);
                        debug_assert_eq!(kslack % 2, 0);
                        let d = kslack / 2;
                        if step.is_none() || d < delta {
                            delta = d;
                            step = Some(Step::Merge(self.bestedge[b]));
                        }
                    }
                }
                for b in nv..2 * nv {
                    if self.blossombase[b] != NONE
                        && self.blossomparent[b] == NONE
                        && self.label[b] == T
                        && (step.is_none() || self.dualvar[b] < delta)
                    {
                        delta = self.dualvar[b];
                        step = Some(Step::Expand(b));
                    }
                }
                let step = match step {
                    Some(s) => s,
                    None => {
                        // Maximum cardinality reached; final update keeps the
                        // duals verifiable.
                        delta = self.dualvar[..nv].iter().copied().min().unwrap_or(0).max(0);
                        Step::Done
                    }
                };

                for v in 0..nv {
                    match self.label[self.inblossom[v]] {
                        S => self.dualvar[v] -= delta,
                        T => self.dualvar[v] += delta,
                        _ => {}
                    }
                }
                for b in nv..2 * nv {
                    if self.blossombase[b] != NONE && self.blossomparent[b] == NONE {
                        match self.label[b] {
                            S => self.dualvar[b] += delta,
                            T => self.dualvar[b] -= delta,
                            _ => {}
                        }
                    }
                }

                match step {
                    Step::Done => break,
                    Step::Grow(k) => {
                        self.allowedge[k] = true;
                        let (mut i, j, _) = self.edges[k];
                        if self.label[self.inblossom[i]] == FREE {
                            i = j;
                        }
                        debug_assert_eq!(self.label[self.inblossom[i]], S);
                        self.queue.push(i);
                    }
                    Step::Merge(k) => {
                        self.allowedge[k] = true;
                        let (i, _, _) = self.edges[k];
                        debug_assert_eq!(self.label[self.inblossom[i]], S);
                        self.queue.push(i);
                    }
                    Step::Expand(b) => self.expand_blossom(b, false),
                }
            }

            if !augmented {
                break;
            }
            for b in nv..2 * nv {
                if self.blossomparent[b] == NONE
                    && self.blossombase[b] != NONE
                    && self.label[b] == S
                    && self.dualvar[b] == 0
                {
                    self.expand_blossom(b, true);
                }
            }
        }

        #[cfg(debug_assertions)]
        self.verify_optimum();

        (0..nv)
            .map(|v| (self.mate[v] != NONE).then(|| self.endpoint[self.mate[v]]))
            .collect()
    }

    /// Complementary slackness check for the max-cardinality optimum.
    #[cfg(debug_assertions)]
    fn verify_optimum(&self) {
        let nv = self.nv;
        let vdualoffset = (-self.dualvar[..nv].iter().copied().min().unwrap_or(0)).max(0);
        assert!(self.dualvar[nv..].iter().all(|&z| z >= 0));
        for (k, &(i, j, wt)) in self.edges.iter().enumerate() {
            let mut s = self.dualvar[i] + self.dualvar[j] - 4 * wt;
            let mut ib = vec![i];
            let mut jb = vec![j];
            while self.blossomparent[*ib.last().unwrap()] != NONE {
                ib.push(self.blossomparent[*ib.last().unwrap()]);
            }
            while self.blossomparent[*jb.last().unwrap()] != NONE {
                jb.push(self.blossomparent[*jb.last().unwrap()]);
            }
            for (&bi, &bj) in ib.iter().rev().zip(jb.iter().rev()) {
                if bi != bj {
                    break;
                }
                s += 2 * self.dualvar[bi];
            }
            assert!(s >= 0, "negative slack on edge {k}");
            let mi = self.mate[i] != NONE && self.mate[i] / 2 == k;
            let mj = self.mate[j] != NONE && self.mate[j] / 2 == k;
            if mi || mj {
                assert!(mi && mj && s == 0, "matched edge {k} is not tight");
            }
        }
        for v in 0..nv {
            assert!(self.mate[v] != NONE || self.dualvar[v] + vdualoffset == 0);
        }
        for b in nv..2 * nv {
            if self.blossombase[b] != NONE && self.dualvar[b] > 0 {
                assert_eq!(self.blossomendps[b].len() % 2, 1);
                for &p in self.blossomendps[b].iter().skip(1).step_by(2) {
                    assert_eq!(self.mate[self.endpoint[p]], p ^ 1);
                    assert_eq!(self.mate[self.endpoint[p ^ 1]], p);
                }
            }
        }
    }
}
