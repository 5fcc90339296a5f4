use rand::Rng;
use rand_distr::Exp1;

use super::CouplingError;
use crate::netgen::Graph;
use crate::seed::rng_from_seed;

/// Realized Poisson marks on `(0, horizon]`.
///
/// `arrows[e]` holds the arrow times of the directed edge `arrow_edges[e]`;
/// `dots[v]` and `crosses[v]` the recovery and isolation marks of vertex `v`.
/// Every stream is strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkSet {
    pub n: usize,
    pub horizon: f64,
    pub seed: Option<u64>,
    pub arrow_edges: Vec<(usize, usize)>,
    pub arrows: Vec<Vec<f64>>,
    pub dots: Vec<Vec<f64>>,
    pub crosses: Vec<Vec<f64>>,
}

/// Event times of a homogeneous Poisson process on `(0, horizon]`, by
/// successive exponential gaps.
fn poisson_stream<R: Rng + ?Sized>(rate: f64, horizon: f64, rng: &mut R) -> Vec<f64> {
    let mut out = Vec::new();
    if rate <= 0.0 {
        return out;
    }
    let mut t = 0.0;
    loop {
        let gap: f64 = rng.sample(Exp1);
        t += gap / rate;
        if t > horizon {
            return out;
        }
        out.push(t);
    }
}

/// Draws arrows at rate `lambda` on both orientations of every edge, dots
/// at rate 1 and crosses at rate `alpha` on every vertex.
///
/// Expected size is `(2 λ |E| + (1 + α) n) · horizon` marks.
pub fn generate_marks(g: &Graph, lambda: f64, alpha: f64, horizon: f64, seed: u64) -> Result<MarkSet, CouplingError> {
    if !(horizon > 0.0 && horizon.is_finite()) {
        return Err(CouplingError::InvalidParameter(format!("horizon must be positive, got {horizon}")));
    }
    if !(lambda >= 0.0 && alpha >= 0.0 && lambda.is_finite() && alpha.is_finite()) {
        return Err(CouplingError::InvalidParameter(format!("rates must be finite and >= 0, got {lambda}, {alpha}")));
    }
    let mut rng = rng_from_seed(seed);
    let n = g.n();
    let mut arrow_edges = Vec::with_capacity(2 * g.edge_count());
    let mut arrows = Vec::with_capacity(2 * g.edge_count());
    for v in 0..n {
        for &w in g.neighbors(v) {
            arrow_edges.push((v, w));
            arrows.push(poisson_stream(lambda, horizon, &mut rng));
        }
    }
    let dots = (0..n).map(|_| poisson_stream(1.0, horizon, &mut rng)).collect();
    let crosses = (0..n).map(|_| poisson_stream(alpha, horizon, &mut rng)).collect();
    Ok(MarkSet { n, horizon, seed: Some(seed), arrow_edges, arrows, dots, crosses })
}

/// Kind of a single mark, with the stream it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mark {
    Dot(usize),
    Cross(usize),
    Arrow(usize, usize),
}

impl MarkSet {
    pub fn total_marks(&self) -> usize {
        [&self.arrows, &self.dots, &self.crosses].iter().flat_map(|s| s.iter()).map(Vec::len).sum()
    }

    /// Checks stream ordering, range and agreement with `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), CouplingError> {
        let bad = |msg: String| Err(CouplingError::MalformedMarks(msg));
        if self.n != g.n() || self.dots.len() != self.n || self.crosses.len() != self.n {
            return bad(format!("marks are for {} vertices, graph has {}", self.n, g.n()));
        }
        if self.arrows.len() != self.arrow_edges.len() {
            return bad("arrow streams and arrow edges differ in length".into());
        }
        if let Some(&(u, v)) = self.arrow_edges.iter().find(|&&(u, v)| !g.has_edge(u, v)) {
            return bad(format!("arrow {u}->{v} is not an edge of the graph"));
        }
        let streams = self
            .arrows
            .iter()
            .enumerate()
            .map(|(e, s)| (format!("arrow {}->{}", self.arrow_edges[e].0, self.arrow_edges[e].1), s))
            .chain(self.dots.iter().enumerate().map(|(v, s)| (format!("dots of {v}"), s)))
            .chain(self.crosses.iter().enumerate().map(|(v, s)| (format!("crosses of {v}"), s)));
        for (name, s) in streams {
            if s.windows(2).any(|w| !(w[0] < w[1])) {
                return bad(format!("{name} is not strictly increasing"));
            }
            if s.iter().any(|&t| !(t > 0.0 && t <= self.horizon)) {
                return bad(format!("{name} has a time outside (0, {}]", self.horizon));
            }
        }
        Ok(())
    }

    /// All marks in global time order; ties broken by stream id (dots,
    /// then crosses, then arrows, each by index).
    pub(crate) fn ordered(&self) -> Vec<(f64, Mark)> {
        let mut all: Vec<(f64, usize, Mark)> = Vec::with_capacity(self.total_marks());
        let n = self.n;
        for (v, s) in self.dots.iter().enumerate() {
            all.extend(s.iter().map(|&t| (t, v, Mark::Dot(v))));
        }
        for (v, s) in self.crosses.iter().enumerate() {
            all.extend(s.iter().map(|&t| (t, n + v, Mark::Cross(v))));
        }
        for (e, s) in self.arrows.iter().enumerate() {
            let (u, v) = self.arrow_edges[e];
            all.extend(s.iter().map(|&t| (t, 2 * n + e, Mark::Arrow(u, v))));
        }
        // stable sort keeps within-stream order for equal keys
        all.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        all.into_iter().map(|(t, _, m)| (t, m)).collect()
    }

    /// Copy with every mark after `t` removed (the horizon is kept).
    pub fn truncated(&self, t: f64) -> MarkSet {
        let cut = |s: &Vec<Vec<f64>>| s.iter().map(|x| x.iter().copied().filter(|&m| m <= t).collect()).collect();
        MarkSet {
            arrows: cut(&self.arrows),
            dots: cut(&self.dots),
            crosses: cut(&self.crosses),
            ..self.clone()
        }
    }

    /// Copy with the arrows of the directed edge `(u, v)` replaced.
    pub fn set_arrows(&mut self, u: usize, v: usize, times: Vec<f64>) {
        match self.arrow_edges.iter().position(|&e| e == (u, v)) {
            Some(e) => self.arrows[e] = times,
            None => {
                self.arrow_edges.push((u, v));
                self.arrows.push(times);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::distribution::{ChiSquared, ContinuousCDF, Discrete, Poisson};

    #[test]
    fn zero_lambda_no_arrows() {
        let m = generate_marks(&Graph::complete(4), 0.0, 1.0, 10.0, 1).unwrap();
        assert_eq!(m.arrows.len(), 12);
        assert!(m.arrows.iter().all(Vec::is_empty));
        m.validate(&Graph::complete(4)).unwrap();
    }

    #[test]
    fn cross_count_mean() {
        let g = Graph::empty(1);
        let sets = 10_000;
        let total: usize = (0..sets).map(|s| generate_marks(&g, 1.0, 2.0, 10.0, s).unwrap().crosses[0].len()).sum();
        let mean = total as f64 / sets as f64;
        assert!((mean - 20.0).abs() < 0.5, "mean {mean}");
    }

    /// Chi-square goodness of fit of dot counts against Poisson(T).
    #[test]
    fn dot_counts_are_poisson() {
        let g = Graph::empty(1);
        let horizon = 3.0;
        let samples = 10_000u64;
        let max_bin = 9usize;
        let mut observed = vec![0f64; max_bin + 1];
        for s in 0..samples {
            let k = generate_marks(&g, 0.0, 0.0, horizon, s).unwrap().dots[0].len();
            observed[k.min(max_bin)] += 1.0;
        }
        let law = Poisson::new(horizon).unwrap();
        let mut expected: Vec<f64> = (0..max_bin).map(|k| law.pmf(k as u64) * samples as f64).collect();
        expected.push(samples as f64 - expected.iter().sum::<f64>());
        let stat: f64 = observed.iter().zip(&expected).map(|(o, e)| (o - e).powi(2) / e).sum();
        let p = 1.0 - ChiSquared::new(max_bin as f64).unwrap().cdf(stat);
        assert!(p > 0.01, "chi2 {stat}, p {p}");
    }

    #[test]
    fn validation_rejects_bad_streams() {
        let g = Graph::path(2);
        let mut m = generate_marks(&g, 1.0, 1.0, 5.0, 3).unwrap();
        m.dots[0] = vec![1.0, 0.5];
        assert!(matches!(m.validate(&g), Err(CouplingError::MalformedMarks(_))));
        m.dots[0] = vec![6.0];
        assert!(m.validate(&g).is_err());
        m.dots[0] = vec![];
        m.set_arrows(0, 0, vec![1.0]);
        assert!(m.validate(&g).is_err());
    }

    #[test]
    fn ordering_is_global() {
        let m = generate_marks(&Graph::cycle(5), 2.0, 0.5, 4.0, 8).unwrap();
        let ord = m.ordered();
        assert_eq!(ord.len(), m.total_marks());
        assert!(ord.windows(2).all(|w| w[0].0 <= w[1].0));
    }
}
