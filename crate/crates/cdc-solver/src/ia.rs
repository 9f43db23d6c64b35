//! Interval algebra kernel: the thirteen basic relations between closed
//! integer intervals, converse, basic-network consistency with canonical
//! interval solutions, direction vectors, and meet-free refinement.
//!
//! Basic-network consistency is decided by endpoint-order reduction: each
//! basic relation expands into order/equality facts over the `2n` interval
//! endpoints, equalities merge endpoint classes, and the strict precedences
//! form a graph over classes. The network is inconsistent exactly when a
//! strict edge closes a cycle; otherwise the class ranks `0..=M` are the
//! unique canonical solution.

use std::fmt;

/// Closed integer interval `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntInterval {
    pub lo: i32,
    pub hi: i32,
}

impl IntInterval {
    pub fn new(lo: i32, hi: i32) -> Self {
        assert!(lo < hi, "interval must be non-degenerate: [{lo},{hi}]");
        IntInterval { lo, hi }
    }
}

impl fmt::Display for IntInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

/// The thirteen basic interval relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IaBasic {
    P,
    M,
    O,
    S,
    D,
    F,
    Eq,
    Fi,
    Di,
    Si,
    Oi,
    Mi,
    Pi,
}

impl IaBasic {
    pub const ALL: [IaBasic; 13] = [
        IaBasic::P,
        IaBasic::M,
        IaBasic::O,
        IaBasic::S,
        IaBasic::D,
        IaBasic::F,
        IaBasic::Eq,
        IaBasic::Fi,
        IaBasic::Di,
        IaBasic::Si,
        IaBasic::Oi,
        IaBasic::Mi,
        IaBasic::Pi,
    ];

    pub fn converse(self) -> IaBasic {
        use IaBasic::*;
        match self {
            P => Pi,
            M => Mi,
            O => Oi,
            S => Si,
            D => Di,
            F => Fi,
            Eq => Eq,
            Fi => F,
            Di => D,
            Si => S,
            Oi => O,
            Mi => M,
            Pi => P,
        }
    }

    pub fn symbol(self) -> &'static str {
        use IaBasic::*;
        match self {
            P => "p",
            M => "m",
            O => "o",
            S => "s",
            D => "d",
            F => "f",
            Eq => "eq",
            Fi => "fi",
            Di => "di",
            Si => "si",
            Oi => "oi",
            Mi => "mi",
            Pi => "pi",
        }
    }

    fn bit(self) -> u16 {
        1 << (self as u16)
    }

    /// Direct endpoint-order pattern of the relation, usable as an
    /// independent check against `basic_ia`.
    pub fn pattern_holds(self, x: IntInterval, y: IntInterval) -> bool {
        use IaBasic::*;
        match self {
            P => x.hi < y.lo,
            M => x.hi == y.lo,
            O => x.lo < y.lo && y.lo < x.hi && x.hi < y.hi,
            S => x.lo == y.lo && x.hi < y.hi,
            D => y.lo < x.lo && x.hi < y.hi,
            F => y.lo < x.lo && x.hi == y.hi,
            Eq => x.lo == y.lo && x.hi == y.hi,
            Fi => x.lo < y.lo && x.hi == y.hi,
            Di => x.lo < y.lo && y.hi < x.hi,
            Si => x.lo == y.lo && y.hi < x.hi,
            Oi => y.lo < x.lo && x.lo < y.hi && y.hi < x.hi,
            Mi => x.lo == y.hi,
            Pi => y.hi < x.lo,
        }
    }
}

impl fmt::Display for IaBasic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// The unique basic relation holding between two intervals.
pub fn basic_ia(x: IntInterval, y: IntInterval) -> IaBasic {
    use std::cmp::Ordering::*;
    use IaBasic::*;
    match (x.lo.cmp(&y.lo), x.hi.cmp(&y.hi)) {
        (Less, Less) => {
            if x.hi < y.lo {
                P
            } else if x.hi == y.lo {
                M
            } else {
                O
            }
        }
        (Less, Equal) => Fi,
        (Less, Greater) => Di,
        (Equal, Less) => S,
        (Equal, Equal) => Eq,
        (Equal, Greater) => Si,
        (Greater, Less) => D,
        (Greater, Equal) => F,
        (Greater, Greater) => {
            if x.lo > y.hi {
                Pi
            } else if x.lo == y.hi {
                Mi
            } else {
                Oi
            }
        }
    }
}

/// A set of basic interval relations; the empty set is the unsatisfiable
/// relation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct IaRelationSet(u16);

impl IaRelationSet {
    pub const EMPTY: IaRelationSet = IaRelationSet(0);

    pub fn singleton(r: IaBasic) -> Self {
        IaRelationSet(r.bit())
    }

    pub fn from_basics(rs: &[IaBasic]) -> Self {
        let mut mask = 0;
        for r in rs {
            mask |= r.bit();
        }
        IaRelationSet(mask)
    }

    pub fn contains(self, r: IaBasic) -> bool {
        self.0 & r.bit() != 0
    }

    pub fn insert(&mut self, r: IaBasic) {
        self.0 |= r.bit();
    }

    pub fn union(self, other: IaRelationSet) -> IaRelationSet {
        IaRelationSet(self.0 | other.0)
    }

    pub fn intersect(self, other: IaRelationSet) -> IaRelationSet {
        IaRelationSet(self.0 & other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// The single member, if the set is a singleton.
    pub fn single(self) -> Option<IaBasic> {
        if self.0.count_ones() == 1 {
            IaBasic::ALL.iter().copied().find(|r| self.contains(*r))
        } else {
            None
        }
    }

    pub fn iter(self) -> impl Iterator<Item = IaBasic> {
        IaBasic::ALL.into_iter().filter(move |r| self.contains(*r))
    }

    /// Basic-wise converse; an involution.
    pub fn converse(self) -> IaRelationSet {
        let mut out = IaRelationSet::EMPTY;
        for r in self.iter() {
            out.insert(r.converse());
        }
        out
    }
}

impl fmt::Display for IaRelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, r) in self.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for IaRelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Boolean flags for the three bands an interval can occupy relative to a
/// reference interval: strictly below its start, inside, strictly beyond its
/// end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DirectionVector {
    pub low: bool,
    pub mid: bool,
    pub high: bool,
}

impl DirectionVector {
    pub fn new(low: bool, mid: bool, high: bool) -> Self {
        DirectionVector { low, mid, high }
    }

    /// All-zero and `(1,0,1)` never arise from a pair of intervals.
    pub fn is_valid(self) -> bool {
        let any = self.low || self.mid || self.high;
        any && !(self.low && !self.mid && self.high)
    }

    /// The interval relation encoded by the vector; `None` for an invalid
    /// vector.
    pub fn ia_relation(self) -> Option<IaRelationSet> {
        use IaBasic::*;
        let set = match (self.low, self.mid, self.high) {
            (true, false, false) => IaRelationSet::from_basics(&[P, M]),
            (false, true, false) => IaRelationSet::from_basics(&[S, D, F, Eq]),
            (false, false, true) => IaRelationSet::from_basics(&[Pi, Mi]),
            (true, true, false) => IaRelationSet::from_basics(&[O, Fi]),
            (false, true, true) => IaRelationSet::from_basics(&[Oi, Si]),
            (true, true, true) => IaRelationSet::singleton(Di),
            _ => return None,
        };
        Some(set)
    }
}

/// Band occupancy of interval `i` relative to interval `j`.
pub fn direction_vector(i: IntInterval, j: IntInterval) -> DirectionVector {
    DirectionVector {
        low: i.lo < j.lo,
        mid: i.lo < j.hi && j.lo < i.hi,
        high: i.hi > j.hi,
    }
}

/// The basic relations compatible with a pair of direction vectors read in
/// both directions: empty, a singleton, or `{p,m}` / `{pi,mi}`.
pub fn vector_pair_relation(s: DirectionVector, t: DirectionVector) -> IaRelationSet {
    let s_rel = s.ia_relation().expect("invalid direction vector");
    let t_rel = t.ia_relation().expect("invalid direction vector");
    s_rel.intersect(t_rel.converse())
}

/// The relations a refinable projective constraint may take: the nine basics
/// other than `p`, `m`, `pi`, `mi`, plus the unions `{p,m}` and `{pi,mi}`.
pub fn in_refinable_domain(r: IaRelationSet) -> bool {
    use IaBasic::*;
    if r.is_empty() {
        return true;
    }
    if r == IaRelationSet::from_basics(&[P, M]) || r == IaRelationSet::from_basics(&[Pi, Mi]) {
        return true;
    }
    match r.single() {
        Some(b) => !matches!(b, P | M | Pi | Mi),
        None => false,
    }
}

/// Meet-free refinement: `{p,m}` becomes `{p}`, `{pi,mi}` becomes `{pi}`,
/// everything else in the domain is unchanged.
pub fn meet_free_refine(r: IaRelationSet) -> IaRelationSet {
    use IaBasic::*;
    assert!(in_refinable_domain(r), "relation {r} outside the refinable domain");
    if r == IaRelationSet::from_basics(&[P, M]) {
        IaRelationSet::singleton(P)
    } else if r == IaRelationSet::from_basics(&[Pi, Mi]) {
        IaRelationSet::singleton(Pi)
    } else {
        r
    }
}

/// Basic interval network: one basic relation per ordered pair, closed under
/// converse.
#[derive(Debug, Clone)]
pub struct IaBasicNetwork {
    n: usize,
    rel: Vec<Option<IaBasic>>,
}

impl IaBasicNetwork {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        IaBasicNetwork { n, rel: vec![None; n * n] }
    }

    pub fn var_count(&self) -> usize {
        self.n
    }

    /// Sets the relation of `i` to `j` and its converse for `j` to `i`.
    pub fn set(&mut self, i: usize, j: usize, r: IaBasic) {
        assert!(i != j && i < self.n && j < self.n);
        self.rel[i * self.n + j] = Some(r);
        self.rel[j * self.n + i] = Some(r.converse());
    }

    pub fn get(&self, i: usize, j: usize) -> Option<IaBasic> {
        self.rel[i * self.n + j]
    }

    pub fn is_complete(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.rel[i * self.n + j].is_some()))
    }

    /// Canonical interval solution of a complete basic network, or `None`
    /// when the network is inconsistent.
    ///
    /// The returned intervals use each integer in `0..=M` as an endpoint and
    /// satisfy every constraint; the assignment with that property is unique.
    pub fn solve(&self) -> Option<Vec<IntInterval>> {
        assert!(self.is_complete(), "network must assign every pair");
        let nodes = 2 * self.n; // node 2i = lo_i, node 2i+1 = hi_i
        let mut uf = UnionFind::new(nodes);
        let mut strict: Vec<(usize, usize)> = Vec::new();
        for i in 0..self.n {
            strict.push((2 * i, 2 * i + 1));
        }
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let r = self.get(i, j).unwrap();
                let (lx, hx, ly, hy) = (2 * i, 2 * i + 1, 2 * j, 2 * j + 1);
                use IaBasic::*;
                match r {
                    P => strict.push((hx, ly)),
                    M => uf.union(hx, ly),
                    O => strict.extend([(lx, ly), (ly, hx), (hx, hy)]),
                    S => {
                        uf.union(lx, ly);
                        strict.push((hx, hy));
                    }
                    D => strict.extend([(ly, lx), (hx, hy)]),
                    F => {
                        uf.union(hx, hy);
                        strict.push((ly, lx));
                    }
                    Eq => {
                        uf.union(lx, ly);
                        uf.union(hx, hy);
                    }
                    Fi => {
                        uf.union(hx, hy);
                        strict.push((lx, ly));
                    }
                    Di => strict.extend([(lx, ly), (hy, hx)]),
                    Si => {
                        uf.union(lx, ly);
                        strict.push((hy, hx));
                    }
                    Oi => strict.extend([(ly, lx), (lx, hy), (hy, hx)]),
                    Mi => uf.union(lx, hy),
                    Pi => strict.push((hy, lx)),
                }
            }
        }

        // Strict precedence graph over the merged endpoint classes.
        let mut indegree = vec![0usize; nodes];
        let mut succs: Vec<Vec<usize>> = vec![Vec::new(); nodes];
        for &(a, b) in &strict {
            let (ra, rb) = (uf.find(a), uf.find(b));
            if ra == rb {
                return None;
            }
            succs[ra].push(rb);
            indegree[rb] += 1;
        }
        let mut remaining: Vec<usize> =
            (0..nodes).filter(|&v| uf.find(v) == v).collect();
        let mut rank = vec![0i32; nodes];
        let mut next_rank = 0;
        while !remaining.is_empty() {
            // For a complete basic network the class order is total, so at
            // most one class can be rank-minimal at a time.
            let pos = remaining.iter().position(|&v| indegree[v] == 0)?;
            let v = remaining.swap_remove(pos);
            debug_assert!(remaining.iter().all(|&w| indegree[w] != 0));
            rank[v] = next_rank;
            next_rank += 1;
            for &w in &succs[v] {
                indegree[w] -= 1;
            }
        }
        Some(
            (0..self.n)
                .map(|i| IntInterval::new(rank[uf.find(2 * i)], rank[uf.find(2 * i + 1)]))
                .collect(),
        )
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Smaller representative wins, keeping ranks deterministic.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}
