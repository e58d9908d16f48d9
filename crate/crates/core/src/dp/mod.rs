//! Free-direction compression: a lexicographic dynamic program over
//! (source vertex, candidate location) states.
//!
//! State `(k, j)` holds the cheapest way to describe vertices `0..=k` with a
//! polyline ending at location `j` of vertex `k`. Costs are compared first by
//! segment count, then by the integral of the squared deviation between the
//! segments and the source.

pub(crate) mod closed;

use std::cmp::Ordering;

pub use closed::{solve_closed, ClosedOrigin};

use crate::error::{Error, Result};
use crate::geom::{line_through, MomentPrefix, Moments, Point, Polyline};
use crate::hull::ConvexHull;
use crate::interval::{
    min_feasible_start_from, within_band, Cone, within_segment_region, EndpointDirs, HullIndex, Support,
};
use crate::lattice::{
    candidates_for_points, make_lattice, CandidateLocation, CandidateSet, LatticeKind,
};
use crate::zigzag::ZigzagTables;

/// `(segments, sse)`, ordered lexicographically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LexCost {
    pub segments: usize,
    pub sse: f64,
}

impl LexCost {
    pub const ZERO: LexCost = LexCost {
        segments: 0,
        sse: 0.0,
    };
    pub const INFINITE: LexCost = LexCost {
        segments: usize::MAX,
        sse: f64::INFINITY,
    };

    pub fn new(segments: usize, sse: f64) -> Self {
        LexCost { segments, sse }
    }

    #[inline]
    pub fn is_finite(&self) -> bool {
        self.segments != usize::MAX
    }

    #[inline]
    pub fn lex_cmp(&self, other: &LexCost) -> Ordering {
        self.segments
            .cmp(&other.segments)
            .then(self.sse.total_cmp(&other.sse))
    }

    #[inline]
    pub fn max(self, other: LexCost) -> LexCost {
        if self.lex_cmp(&other) == Ordering::Less {
            other
        } else {
            self
        }
    }

    /// One more segment with deviation `eps`.
    #[inline]
    fn extend(self, eps: f64) -> LexCost {
        LexCost::new(self.segments + 1, self.sse + eps)
    }
}

impl PartialOrd for LexCost {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.lex_cmp(other))
    }
}

/// How ranges of break vertices are skipped when pruning is on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PruneRule {
    /// Skip `[k1, k2]` when the cheapest state in the range plus one segment
    /// and the least deviation of any line through the end location over
    /// `k2..=k` cannot beat the current best. Never changes the result.
    #[default]
    Certified,
    /// Skip using [`Compressor::prune_bound`]: the bound through vertex `k2`
    /// combined with the bound from the cheapest state at `k1`. These bounds
    /// only hold approximately and can lose the optimum.
    Approximate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveConfig {
    pub tolerance: f64,
    /// Lattice covering radius as a fraction of the tolerance.
    pub q: f64,
    /// Number of tabulated directions for the reversal test.
    pub directions: usize,
    pub prune: bool,
    pub prune_rule: PruneRule,
    pub endpoint_dirs: EndpointDirs,
    /// Maximum source segment length; longer segments are subdivided first.
    pub densify: Option<f64>,
    /// See [`CandidateSet::dedup_shared`].
    pub dedup_candidates: bool,
    /// Endpoint and reversal tests. Turning them off lets segments skip over
    /// parts of the source and exists to demonstrate that failure.
    pub topology_checks: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            tolerance: 1.0,
            q: 0.3,
            directions: 64,
            prune: true,
            prune_rule: PruneRule::Certified,
            endpoint_dirs: EndpointDirs::Eight,
            densify: None,
            dedup_candidates: false,
            topology_checks: true,
        }
    }
}

impl SolveConfig {
    pub fn new(tolerance: f64) -> Self {
        SolveConfig {
            tolerance,
            ..Default::default()
        }
    }

    pub fn with_q(mut self, q: f64) -> Self {
        self.q = q;
        self
    }

    pub fn with_prune(mut self, prune: bool) -> Self {
        self.prune = prune;
        self
    }

    pub fn with_prune_rule(mut self, rule: PruneRule) -> Self {
        self.prune_rule = rule;
        self
    }

    pub fn with_endpoint_dirs(mut self, dirs: EndpointDirs) -> Self {
        self.endpoint_dirs = dirs;
        self
    }

    pub fn with_directions(mut self, directions: usize) -> Self {
        self.directions = directions;
        self
    }

    pub fn with_topology_checks(mut self, on: bool) -> Self {
        self.topology_checks = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) || !self.tolerance.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if !(self.q > 0.0 && self.q < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "q must be in (0, 1), got {}",
                self.q
            )));
        }
        if self.directions < 4 {
            return Err(Error::InvalidParameter(format!(
                "need at least 4 directions, got {}",
                self.directions
            )));
        }
        if let Some(d) = self.densify {
            if !(d > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "densify length must be positive, got {d}"
                )));
            }
        }
        Ok(())
    }
}

/// A compressed polyline together with its cost and the source vertex range
/// each output segment describes.
#[derive(Debug, Clone, PartialEq)]
pub struct CompressedResult {
    /// Output vertices in drawing order; closed results repeat the first
    /// vertex bit-exactly at the end.
    pub vertices: Vec<Point>,
    pub closed: bool,
    pub cost: LexCost,
    /// `(first, last)` source vertex indices of every segment.
    pub ranges: Vec<(usize, usize)>,
    /// Source vertex index of every output vertex.
    pub sources: Vec<usize>,
    /// Lattice coordinates of every output vertex.
    pub lattice_coords: Vec<(i64, i64)>,
    /// Set once the result has been altered after solving.
    pub post_processed: bool,
}

impl CompressedResult {
    pub fn segment_count(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn polyline(&self) -> Polyline {
        Polyline::new(self.vertices.clone(), self.closed)
            .expect("compressed result always has at least two vertices")
    }

    pub fn segment_lengths(&self) -> Vec<f64> {
        self.vertices.windows(2).map(|w| w[0].dist(w[1])).collect()
    }
}

/// Dynamic-programming table: cost and back-pointer per `(k, j)`.
#[derive(Debug, Clone)]
pub struct DpTable {
    offsets: Vec<usize>,
    cost: Vec<LexCost>,
    back: Vec<Option<(u32, u32)>>,
}

impl DpTable {
    fn new(cands: &CandidateSet) -> Self {
        let mut offsets = Vec::with_capacity(cands.len() + 1);
        offsets.push(0);
        for c in cands.iter() {
            offsets.push(offsets.last().unwrap() + c.len());
        }
        let total = *offsets.last().unwrap();
        DpTable {
            offsets,
            cost: vec![LexCost::INFINITE; total],
            back: vec![None; total],
        }
    }

    /// Builds a table from explicit rows; used to exercise reconstruction.
    pub fn from_rows(rows: Vec<Vec<(LexCost, Option<(usize, usize)>)>>) -> Self {
        let mut offsets = vec![0];
        let mut cost = Vec::new();
        let mut back = Vec::new();
        for row in rows {
            offsets.push(offsets.last().unwrap() + row.len());
            for (c, b) in row {
                cost.push(c);
                back.push(b.map(|(k, j)| (k as u32, j as u32)));
            }
        }
        DpTable {
            offsets,
            cost,
            back,
        }
    }

    #[inline]
    pub fn vertices(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn locations(&self, k: usize) -> usize {
        self.offsets[k + 1] - self.offsets[k]
    }

    #[inline]
    pub fn cost(&self, k: usize, j: usize) -> LexCost {
        self.cost[self.offsets[k] + j]
    }

    #[inline]
    pub fn back(&self, k: usize, j: usize) -> Option<(usize, usize)> {
        self.back[self.offsets[k] + j].map(|(a, b)| (a as usize, b as usize))
    }

    fn row_mut(&mut self, k: usize) -> (&mut [LexCost], &mut [Option<(u32, u32)>]) {
        let r = self.offsets[k]..self.offsets[k + 1];
        (&mut self.cost[r.clone()], &mut self.back[r])
    }

    /// Cheapest location of the last vertex (lowest index on ties).
    pub fn terminal(&self) -> Option<(usize, usize)> {
        let k = self.vertices() - 1;
        (0..self.locations(k))
            .filter(|&j| self.cost(k, j).is_finite())
            .min_by(|&a, &b| self.cost(k, a).lex_cmp(&self.cost(k, b)).then(a.cmp(&b)))
            .map(|j| (k, j))
    }

    fn row_min(&self, k: usize) -> LexCost {
        (0..self.locations(k))
            .map(|j| self.cost(k, j))
            .min_by(|a, b| a.lex_cmp(b))
            .unwrap_or(LexCost::INFINITE)
    }
}

/// Walks back-pointers from `terminal` to vertex 0; returns the `(k, j)`
/// states in source order.
pub fn reconstruct(dp: &DpTable, terminal: (usize, usize)) -> Result<Vec<(usize, usize)>> {
    let mut path = vec![terminal];
    let mut cur = terminal;
    while cur.0 > 0 {
        match dp.back(cur.0, cur.1) {
            Some(prev) if prev.0 < cur.0 => {
                path.push(prev);
                cur = prev;
            }
            _ => return Err(Error::CorruptTable(cur.0)),
        }
    }
    path.reverse();
    Ok(path)
}

/// Preprocessed problem: candidate locations, prefix moments, interval hulls
/// and reversal tables for one open vertex sequence.
#[derive(Debug, Clone)]
pub struct Compressor {
    points: Vec<Point>,
    cands: CandidateSet,
    moments: MomentPrefix,
    hulls: HullIndex,
    zigzag: Option<ZigzagTables>,
    cfg: SolveConfig,
}

impl Compressor {
    /// `points` is treated as an open sequence (a closed ring must already
    /// repeat its first vertex at the end).
    pub fn new(points: Vec<Point>, cfg: &SolveConfig) -> Result<Self> {
        cfg.validate()?;
        if points.len() < 2 {
            return Err(Error::InvalidPolyline("need at least 2 vertices".into()));
        }
        let lattice = make_lattice(cfg.tolerance, cfg.q, LatticeKind::Triangular)?;
        let mut cands = candidates_for_points(&points, &lattice, cfg.tolerance);
        if cfg.dedup_candidates {
            cands.dedup_shared(&points);
        }
        Self::with_candidates(points, cands, cfg)
    }

    pub(crate) fn with_candidates(
        points: Vec<Point>,
        cands: CandidateSet,
        cfg: &SolveConfig,
    ) -> Result<Self> {
        cfg.validate()?;
        let zigzag = if cfg.topology_checks {
            Some(ZigzagTables::new(&points, cfg.tolerance, cfg.directions)?)
        } else {
            None
        };
        Ok(Compressor {
            moments: MomentPrefix::new(&points),
            hulls: HullIndex::new(&points),
            zigzag,
            cands,
            points,
            cfg: cfg.clone(),
        })
    }

    /// Fixes the first and last vertex to one location.
    pub(crate) fn restrict_ends(&mut self, loc: CandidateLocation) {
        let last = self.points.len() - 1;
        self.cands.restrict(0, loc);
        self.cands.restrict(last, loc);
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn candidates(&self) -> &CandidateSet {
        &self.cands
    }

    pub fn config(&self) -> &SolveConfig {
        &self.cfg
    }

    #[inline]
    fn pos(&self, k: usize, j: usize) -> Point {
        self.cands.at(k)[j].position
    }

    /// Integral squared deviation of vertices `k'..=k` from the segment
    /// between the two locations (a point when they coincide).
    pub fn epsilon(&self, from: (usize, usize), to: (usize, usize)) -> f64 {
        let m = self
            .moments
            .interval(from.0, to.0)
            .expect("epsilon range within polyline");
        self.epsilon_with(&m, self.pos(from.0, from.1), self.pos(to.0, to.1))
    }

    #[inline]
    fn epsilon_with(&self, m: &Moments, a: Point, b: Point) -> f64 {
        match line_through(a, b) {
            Ok(line) => self.moments.line_dev(m, &line),
            Err(_) => {
                let c = a - self.moments.origin();
                (m.sxx + m.syy - 2.0 * (c.x * m.sx + c.y * m.sy) + c.norm_sq() * m.length)
                    .max(0.0)
            }
        }
    }

    /// The full feasibility test for one candidate segment.
    pub fn check(&self, from: (usize, usize), to: (usize, usize)) -> bool {
        let ((kp, jp), (k, j)) = (from, to);
        if kp >= k || k >= self.points.len() {
            return false;
        }
        if let Some(zt) = &self.zigzag {
            if zt.rejects_all(kp, k) {
                return false;
            }
        }
        if self.hulls.interval_hull(kp, k).width() > 2.0 * self.cfg.tolerance + self.hulls.eps() {
            return false;
        }
        let cover = self.hulls.query(kp, k);
        self.pair_feasible(kp, k, self.pos(kp, jp), self.pos(k, j), &cover)
    }

    /// Reversal, tolerance and endpoint tests, in that order.
    fn pair_feasible<S: Support + ?Sized>(&self, kp: usize, k: usize, a: Point, b: Point, hull: &S) -> bool {
        let tol = self.cfg.tolerance;
        let eps = self.hulls.eps();
        let Ok(line) = line_through(a, b) else {
            // coincident locations only bridge adjacent vertices, and only
            // when both lie in the square of half-side T around the location
            return k == kp + 1
                && [self.points[kp], self.points[k]]
                    .iter()
                    .all(|p| (p.x - a.x).abs() <= tol + eps && (p.y - a.y).abs() <= tol + eps);
        };
        if let Some(zt) = &self.zigzag {
            let d = b - a;
            if !zt.passes(kp, k, d.y.atan2(d.x)) {
                return false;
            }
        }
        if !within_band(hull, &line, tol, eps) {
            return false;
        }
        !self.cfg.topology_checks
            || within_segment_region(hull, a, b, tol, self.cfg.endpoint_dirs, eps)
    }

    /// Lower bound on the best cost reachable at `(k, j)` from any
    /// `k' ∈ [k1, k2]`: the larger of the bound through vertex `k2` and the
    /// bound from the cheapest state at `k1`.
    pub fn prune_bound(&self, k1: usize, k2: usize, k: usize, j: usize, dp: &DpTable) -> LexCost {
        let b = self.pos(k, j);
        let m = self.moments.interval(k2, k).expect("bound range");
        let feasible = (0..dp.locations(k2)).filter_map(|j2| {
            self.check((k2, j2), (k, j))
                .then(|| (j2, self.epsilon_with(&m, self.pos(k2, j2), b)))
        });
        combine_bounds(dp, k1, k2, feasible)
    }

    /// Fills the dynamic-programming table.
    pub fn run(&self) -> Result<DpTable> {
        let n = self.points.len();
        let mut dp = DpTable::new(&self.cands);
        {
            let (cost, _) = dp.row_mut(0);
            cost.fill(LexCost::ZERO);
        }
        let mut mins = RangeMin::default();
        mins.push(LexCost::ZERO);
        let mut lo_width = 0;
        for k in 1..n {
            lo_width = min_feasible_start_from(&self.hulls, lo_width, k, self.cfg.tolerance)?;
            let lo = match &self.zigzag {
                Some(zt) => lo_width.max(zt.w(k)),
                None => lo_width,
            };
            debug_assert!(lo < k);
            let mut row = RowScan::new(self, &dp, k, lo);
            match (self.cfg.prune, self.cfg.prune_rule) {
                (false, _) => row.scan_all(),
                (true, PruneRule::Certified) => {
                    for j in 0..row.width {
                        row.scan_certified(lo, k - 1, j, &mins);
                    }
                }
                (true, PruneRule::Approximate) => {
                    for j in 0..row.width {
                        row.scan_pruned(lo, k - 1, j);
                    }
                }
            }
            let (best, back) = (row.best, row.back);
            let (cost_row, back_row) = dp.row_mut(k);
            cost_row.copy_from_slice(&best);
            for (slot, b) in back_row.iter_mut().zip(back) {
                *slot = b.map(|(a, c)| (a as u32, c as u32));
            }
            if best.iter().all(|c| !c.is_finite()) {
                return Err(Error::no_solution(Some(k), "no feasible segment ends here"));
            }
            mins.push(dp.row_min(k));
        }
        Ok(dp)
    }

    /// Turns a filled table into a result over this compressor's vertices.
    pub fn finish(&self, dp: &DpTable) -> Result<CompressedResult> {
        let terminal = dp
            .terminal()
            .ok_or_else(|| Error::no_solution(Some(self.points.len() - 1), "unreachable end"))?;
        let path = reconstruct(dp, terminal)?;
        let locs: Vec<&CandidateLocation> =
            path.iter().map(|&(k, j)| &self.cands.at(k)[j]).collect();
        Ok(CompressedResult {
            vertices: locs.iter().map(|l| l.position).collect(),
            closed: false,
            cost: dp.cost(terminal.0, terminal.1),
            ranges: path.windows(2).map(|w| (w[0].0, w[1].0)).collect(),
            sources: path.iter().map(|&(k, _)| k).collect(),
            lattice_coords: locs.iter().map(|l| l.lattice_coords).collect(),
            post_processed: false,
        })
    }

    /// Every source vertex within `T(1+q)` of the segments describing it and
    /// every output vertex within `T` of its source vertex.
    pub(crate) fn verify(&self, res: &CompressedResult) -> Result<()> {
        if !self.cfg.topology_checks {
            return Ok(());
        }
        let tol = self.cfg.tolerance;
        let limit = tol * (1.0 + self.cfg.q) + 1e-9;
        for (v, &s) in res.vertices.iter().zip(&res.sources) {
            if v.dist(self.points[s]) >= tol {
                return Err(Error::no_solution(Some(s), "output vertex farther than T"));
            }
        }
        for (seg, &(s, e)) in res.ranges.iter().enumerate() {
            let lo = seg.saturating_sub(1);
            let hi = (seg + 1).min(res.ranges.len() - 1);
            for i in s..=e {
                let d = (lo..=hi)
                    .map(|t| {
                        crate::geom::point_segment_distance(
                            self.points[i],
                            res.vertices[t],
                            res.vertices[t + 1],
                        )
                    })
                    .fold(f64::INFINITY, f64::min);
                if d > limit {
                    return Err(Error::no_solution(
                        Some(i),
                        format!("source vertex {d} from the result, limit {limit}"),
                    ));
                }
            }
        }
        Ok(())
    }
}

fn combine_bounds(
    dp: &DpTable,
    k1: usize,
    k2: usize,
    feasible: impl Iterator<Item = (usize, f64)>,
) -> LexCost {
    let mut through = LexCost::INFINITE;
    let mut min_eps = f64::INFINITY;
    for (j2, e) in feasible {
        min_eps = min_eps.min(e);
        let c = dp.cost(k2, j2);
        if c.is_finite() {
            let cand = LexCost::new(c.segments, c.sse + e);
            if cand.lex_cmp(&through) == Ordering::Less {
                through = cand;
            }
        }
    }
    if !min_eps.is_finite() {
        // nothing reaches (k, j) from k2, so nothing is expected from
        // further back either
        return LexCost::INFINITE;
    }
    through.max(dp.row_min(k1).extend(min_eps))
}

/// Range minimum over finished rows (sparse table, appended row by row).
#[derive(Debug, Default)]
struct RangeMin {
    levels: Vec<Vec<LexCost>>,
}

impl RangeMin {
    fn push(&mut self, c: LexCost) {
        if self.levels.is_empty() {
            self.levels.push(Vec::new());
        }
        self.levels[0].push(c);
        let n = self.levels[0].len();
        let mut l = 1;
        while (1 << l) <= n {
            if self.levels.len() == l {
                self.levels.push(Vec::new());
            }
            let i = n - (1 << l);
            let (a, b) = (self.levels[l - 1][i], self.levels[l - 1][i + (1 << (l - 1))]);
            debug_assert_eq!(self.levels[l].len(), i);
            self.levels[l].push(if b.lex_cmp(&a) == Ordering::Less { b } else { a });
            l += 1;
        }
    }

    fn query(&self, lo: usize, hi: usize) -> LexCost {
        let l = (usize::BITS - 1 - (hi - lo + 1).leading_zeros()) as usize;
        let (a, b) = (self.levels[l][lo], self.levels[l][hi + 1 - (1 << l)]);
        if b.lex_cmp(&a) == Ordering::Less {
            b
        } else {
            a
        }
    }
}

/// Lazily computed data for one `k'` column while processing vertex `k`.
struct Column {
    moments: Moments,
    hull: Option<ConvexHull>,
    /// Band-test prefilter per `j'`.
    cones: Vec<Option<Cone>>,
    /// `-1` unknown, `0` infeasible, `1` feasible; indexed `j' * width + j`.
    feasible: Vec<i8>,
    eps: Vec<f64>,
}

struct RowScan<'a> {
    c: &'a Compressor,
    dp: &'a DpTable,
    k: usize,
    lo: usize,
    width: usize,
    columns: Vec<Option<Column>>,
    best: Vec<LexCost>,
    back: Vec<Option<(usize, usize)>>,
}

impl<'a> RowScan<'a> {
    fn new(c: &'a Compressor, dp: &'a DpTable, k: usize, lo: usize) -> Self {
        let width = c.cands.at(k).len();
        RowScan {
            c,
            dp,
            k,
            lo,
            width,
            columns: (lo..k).map(|_| None).collect(),
            best: vec![LexCost::INFINITE; width],
            back: vec![None; width],
        }
    }

    fn column(&mut self, kp: usize) -> &mut Column {
        let slot = kp - self.lo;
        if self.columns[slot].is_none() {
            let size = self.dp.locations(kp) * self.width;
            self.columns[slot] = Some(Column {
                moments: self.c.moments.interval(kp, self.k).expect("column range"),
                hull: None,
                cones: vec![None; self.dp.locations(kp)],
                feasible: vec![-1; size],
                eps: vec![f64::NAN; size],
            });
        }
        self.columns[slot].as_mut().unwrap()
    }

    fn eps(&mut self, kp: usize, jp: usize, j: usize) -> f64 {
        let width = self.width;
        let (a, b) = (self.c.pos(kp, jp), self.c.pos(self.k, j));
        let c = self.c;
        let col = self.column(kp);
        let slot = jp * width + j;
        if col.eps[slot].is_nan() {
            col.eps[slot] = c.epsilon_with(&col.moments, a, b);
        }
        col.eps[slot]
    }

    fn feasible(&mut self, kp: usize, jp: usize, j: usize) -> bool {
        let width = self.width;
        let (a, b) = (self.c.pos(kp, jp), self.c.pos(self.k, j));
        let (c, k) = (self.c, self.k);
        let col = self.column(kp);
        let slot = jp * width + j;
        if col.feasible[slot] < 0 {
            let hull = col.hull.get_or_insert_with(|| c.hulls.interval_hull(kp, k));
            let cone = *col.cones[jp]
                .get_or_insert_with(|| Cone::around(hull.vertices(), a, c.cfg.tolerance));
            let ok = (a == b || cone.admits(b - a)) && c.pair_feasible(kp, k, a, b, hull);
            col.feasible[slot] = ok as i8;
        }
        col.feasible[slot] == 1
    }

    /// Relaxes `(k, j)` through `(k', j')`. Ties go to the smaller `(k', j')`.
    #[inline]
    fn relax(&mut self, kp: usize, jp: usize, j: usize) {
        let prev = self.dp.cost(kp, jp);
        if !prev.is_finite() {
            return;
        }
        let best = self.best[j];
        if prev.segments + 1 > best.segments
            || (prev.segments + 1 == best.segments && prev.sse > best.sse)
        {
            return;
        }
        if prev.segments + 1 < best.segments {
            // fewer segments wins outright; the deviation is only needed once feasible
            if self.feasible(kp, jp, j) {
                self.best[j] = prev.extend(self.eps(kp, jp, j));
                self.back[j] = Some((kp, jp));
            }
            return;
        }
        let cand = prev.extend(self.eps(kp, jp, j));
        match cand.lex_cmp(&best) {
            Ordering::Greater => return,
            Ordering::Equal if self.back[j].is_some_and(|b| b <= (kp, jp)) => return,
            _ => {}
        }
        if self.feasible(kp, jp, j) {
            self.best[j] = cand;
            self.back[j] = Some((kp, jp));
        }
    }

    /// Exhaustive scan; stops once no remaining column can beat every
    /// current best on segment count.
    fn scan_all(&mut self) {
        let k = self.k;
        let mut suffix_min = vec![usize::MAX; k - self.lo + 1];
        for kp in (self.lo..k).rev() {
            let m = (0..self.dp.locations(kp))
                .map(|jp| self.dp.cost(kp, jp).segments)
                .min()
                .unwrap_or(usize::MAX);
            suffix_min[kp - self.lo] = m.min(suffix_min[kp - self.lo + 1]);
        }
        for kp in self.lo..k {
            let worst = self.best.iter().map(|b| b.segments).max().unwrap_or(usize::MAX);
            if suffix_min[kp - self.lo].saturating_add(1) > worst {
                break;
            }
            for jp in 0..self.dp.locations(kp) {
                for j in 0..self.width {
                    self.relax(kp, jp, j);
                }
            }
        }
    }

    /// Recursive halving of `[k1, k2]` under [`PruneRule::Certified`].
    fn scan_certified(&mut self, k1: usize, k2: usize, j: usize, mins: &RangeMin) {
        let start = mins.query(k1, k2);
        if start.segments.saturating_add(1) > self.best[j].segments {
            return;
        }
        let b = self.c.pos(self.k, j);
        let m = self.c.moments.interval(k2, self.k).expect("bound range");
        let bound = start.extend(self.c.moments.min_dev_through(&m, b));
        if bound.lex_cmp(&self.best[j]) == Ordering::Greater {
            return;
        }
        if k1 == k2 {
            for jp in 0..self.dp.locations(k1) {
                self.relax(k1, jp, j);
            }
            return;
        }
        let mid = k1 + (k2 - k1) / 2;
        self.scan_certified(k1, mid, j, mins);
        self.scan_certified(mid + 1, k2, j, mins);
    }

    /// Recursive halving of `[k1, k2]`, skipping ranges whose bound cannot
    /// beat the current best for `(k, j)`.
    fn scan_pruned(&mut self, k1: usize, k2: usize, j: usize) {
        let bound = self.bound(k1, k2, j);
        if bound.lex_cmp(&self.best[j]) != Ordering::Less {
            return;
        }
        if k1 == k2 {
            return;
        }
        let mid = k1 + (k2 - k1) / 2;
        self.scan_pruned(k1, mid, j);
        self.scan_pruned(mid + 1, k2, j);
    }

    /// [`Compressor::prune_bound`] over cached checks; also relaxes `(k, j)`
    /// through every state at `k2`, since those checks are already done.
    fn bound(&mut self, k1: usize, k2: usize, j: usize) -> LexCost {
        let mut feasible = Vec::new();
        for j2 in 0..self.dp.locations(k2) {
            if self.feasible(k2, j2, j) {
                let e = self.eps(k2, j2, j);
                feasible.push((j2, e));
                if !self.dp.cost(k2, j2).is_finite() {
                    continue;
                }
                let cand = self.dp.cost(k2, j2).extend(e);
                let better = match cand.lex_cmp(&self.best[j]) {
                    Ordering::Less => true,
                    Ordering::Equal => self.back[j].is_none_or(|b| (k2, j2) < b),
                    Ordering::Greater => false,
                };
                if better {
                    self.best[j] = cand;
                    self.back[j] = Some((k2, j2));
                }
            }
        }
        combine_bounds(self.dp, k1, k2, feasible.into_iter())
    }
}

/// Optimal compression of an open polyline.
pub fn solve(poly: &Polyline, cfg: &SolveConfig) -> Result<CompressedResult> {
    if poly.is_closed() {
        return Err(Error::InvalidParameter(
            "solve expects an open polyline; use solve_closed".into(),
        ));
    }
    cfg.validate()?;
    let poly = match cfg.densify {
        Some(d) => poly.densified(d)?,
        None => poly.clone(),
    };
    let comp = Compressor::new(poly.into_vertices(), cfg)?;
    let dp = comp.run()?;
    let res = comp.finish(&dp)?;
    comp.verify(&res)?;
    Ok(res)
}

/// Dispatches on [`Polyline::is_closed`].
pub fn compress(poly: &Polyline, cfg: &SolveConfig) -> Result<CompressedResult> {
    if poly.is_closed() {
        solve_closed(poly, cfg)
    } else {
        solve(poly, cfg)
    }
}
