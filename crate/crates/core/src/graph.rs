//! Undirected and acyclic directed graphs on `[m]` and their separation relations.

use std::fmt;

use crate::error::{Error, Result};
use crate::relation::{check_ground, slot_count, Couple, Relation};

/// Simple undirected graph, adjacency stored as bitmasks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    ground: usize,
    adj: Vec<u8>,
}

impl Graph {
    pub fn new(ground: usize) -> Result<Self> {
        check_ground(ground)?;
        Ok(Graph {
            ground,
            adj: vec![0; ground],
        })
    }

    /// Zero-based edges.
    pub fn from_edges(ground: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(ground)?;
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn complete(ground: usize) -> Result<Self> {
        let mut g = Graph::new(ground)?;
        for a in 0..ground {
            for b in a + 1..ground {
                g.add_edge(a, b)?;
            }
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        if a == b || a >= self.ground || b >= self.ground {
            return Err(Error::InvalidGraph(format!("edge {}-{}", a + 1, b + 1)));
        }
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
        Ok(())
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] & (1 << b) != 0
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.ground {
            for b in a + 1..self.ground {
                if self.has_edge(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Whether every path from `i` to `j` meets `blocked`.
    pub fn separates(&self, i: usize, j: usize, blocked: u8) -> bool {
        let mut seen: u8 = (1 << i) | blocked;
        let mut frontier: u8 = 1 << i;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let next = self.adj[v] & !seen;
            if next & (1 << j) != 0 {
                return false;
            }
            seen |= next;
            frontier |= next;
        }
        true
    }

    /// The graph whose edges are the pairs `ij` with `ij|[m]∖ij` absent from `l`.
    pub fn of_missing_full_couples(l: &Relation) -> Graph {
        let m = l.ground();
        let full = ((1u16 << m) - 1) as u8;
        let mut g = Graph::new(m).expect("ground already valid");
        for a in 0..m {
            for b in a + 1..m {
                let c = Couple::new(m, a, b, full & !(1 << a) & !(1 << b)).expect("valid couple");
                if !l.contains(&c) {
                    g.add_edge(a, b).expect("valid edge");
                }
            }
        }
        g
    }

    /// Text form: `m=<k>` then one `i-j` per line.
    pub fn parse(text: &str) -> Result<Graph> {
        let (m, lines) = parse_header(text)?;
        let mut g = Graph::new(m)?;
        for line in lines {
            let (a, b) = parse_edge(line, '-', m)?;
            g.add_edge(a, b)?;
        }
        Ok(g)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "m={}", self.ground)?;
        for (a, b) in self.edges() {
            writeln!(f, "{}-{}", a + 1, b + 1)?;
        }
        Ok(())
    }
}

/// Directed graph; acyclicity is checked where needed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Digraph {
    ground: usize,
    parents: Vec<u8>,
}

impl Digraph {
    pub fn new(ground: usize) -> Result<Self> {
        check_ground(ground)?;
        Ok(Digraph {
            ground,
            parents: vec![0; ground],
        })
    }

    /// Zero-based arcs `(from, to)`.
    pub fn from_arcs(ground: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut d = Digraph::new(ground)?;
        for &(a, b) in arcs {
            d.add_arc(a, b)?;
        }
        Ok(d)
    }

    pub fn add_arc(&mut self, from: usize, to: usize) -> Result<()> {
        if from == to || from >= self.ground || to >= self.ground {
            return Err(Error::InvalidGraph(format!("arc {}>{}", from + 1, to + 1)));
        }
        self.parents[to] |= 1 << from;
        Ok(())
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for to in 0..self.ground {
            for from in 0..self.ground {
                if self.parents[to] & (1 << from) != 0 {
                    out.push((from, to));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn: repeatedly strip nodes without remaining parents.
        let mut left: u8 = ((1u16 << self.ground) - 1) as u8;
        loop {
            let source = (0..self.ground).find(|&v| left & (1 << v) != 0 && self.parents[v] & left == 0);
            match source {
                Some(v) => left &= !(1 << v),
                None => return left == 0,
            }
        }
    }

    fn ancestors_of(&self, set: u8) -> u8 {
        let mut anc = set;
        loop {
            let mut next = anc;
            for v in 0..self.ground {
                if anc & (1 << v) != 0 {
                    next |= self.parents[v];
                }
            }
            if next == anc {
                return anc;
            }
            anc = next;
        }
    }

    /// Moral graph of the subgraph induced on `keep`.
    fn moral_graph(&self, keep: u8) -> Graph {
        let mut g = Graph::new(self.ground).expect("ground already valid");
        for v in 0..self.ground {
            if keep & (1 << v) == 0 {
                continue;
            }
            let pa: Vec<usize> = (0..self.ground)
                .filter(|&p| self.parents[v] & keep & (1 << p) != 0)
                .collect();
            for &p in &pa {
                g.add_edge(p, v).expect("valid edge");
            }
            for (x, &p) in pa.iter().enumerate() {
                for &q in &pa[x + 1..] {
                    g.add_edge(p, q).expect("valid edge");
                }
            }
        }
        g
    }

    /// d-separation of `i` and `j` given `cond`, via the moralized ancestral graph.
    pub fn d_separates(&self, i: usize, j: usize, cond: u8) -> bool {
        let keep = self.ancestors_of((1 << i) | (1 << j) | cond);
        self.moral_graph(keep).separates(i, j, cond)
    }

    /// Text form: `m=<k>` then one `i>j` per line.
    pub fn parse(text: &str) -> Result<Digraph> {
        let (m, lines) = parse_header(text)?;
        let mut d = Digraph::new(m)?;
        for line in lines {
            let (a, b) = parse_edge(line, '>', m)?;
            d.add_arc(a, b)?;
        }
        Ok(d)
    }
}

impl fmt::Display for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "m={}", self.ground)?;
        for (a, b) in self.arcs() {
            writeln!(f, "{}>{}", a + 1, b + 1)?;
        }
        Ok(())
    }
}

fn parse_header(text: &str) -> Result<(usize, Vec<&str>)> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("missing `m=<k>` header".into()))?;
    let m = header
        .strip_prefix("m=")
        .and_then(|s| s.trim().parse::<usize>().ok())
        .ok_or_else(|| Error::Parse(format!("bad header `{header}`")))?;
    check_ground(m)?;
    Ok((m, lines.collect()))
}

fn parse_edge(line: &str, sep: char, m: usize) -> Result<(usize, usize)> {
    let (a, b) = line
        .split_once(sep)
        .ok_or_else(|| Error::Parse(format!("bad edge `{line}`")))?;
    let idx = |s: &str| -> Result<usize> {
        match s.trim().parse::<usize>() {
            Ok(v) if (1..=m).contains(&v) => Ok(v - 1),
            _ => Err(Error::Parse(format!("bad vertex in `{line}`"))),
        }
    };
    Ok((idx(a)?, idx(b)?))
}

/// Couples `ij|C` such that `C` separates `i` and `j` in `g`.
pub fn separation_graphoid(g: &Graph) -> Relation {
    let m = g.ground();
    let mut rel = Relation::empty(m).expect("ground already valid");
    for s in 0..slot_count(m) {
        let c = Couple::from_slot(m, s);
        let (i, j) = c.pair();
        if g.separates(i, j, c.cond()) {
            rel.insert(c).expect("same ground");
        }
    }
    rel
}

/// Couples `ij|C` such that `i` and `j` are d-separated by `C` in `d`.
pub fn d_separation_graphoid(d: &Digraph) -> Result<Relation> {
    if !d.is_acyclic() {
        return Err(Error::CyclicDigraph);
    }
    let m = d.ground();
    let mut rel = Relation::empty(m)?;
    for s in 0..slot_count(m) {
        let c = Couple::from_slot(m, s);
        let (i, j) = c.pair();
        if d.d_separates(i, j, c.cond()) {
            rel.insert(c)?;
        }
    }
    Ok(rel)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Relation {
        Relation::parse(s, 4).unwrap()
    }

    #[test]
    fn undirected_examples() {
        assert_eq!(separation_graphoid(&Graph::complete(4).unwrap()), r(""));
        let edge = Graph::from_edges(4, &[(0, 1)]).unwrap();
        assert_eq!(separation_graphoid(&edge), r("13|*,14|*,23|*,24|*,34|*"));
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(separation_graphoid(&star), r("23|1,23|14,24|1,24|13,34|1,34|12"));
        assert_eq!(separation_graphoid(&Graph::new(4).unwrap()), Relation::full(4).unwrap());
    }

    #[test]
    fn directed_examples() {
        let d = Digraph::from_arcs(4, &[(1, 0), (2, 0)]).unwrap();
        assert_eq!(d_separation_graphoid(&d).unwrap(), r("14|*,23,23|4,24|*,34|*"));
        let d = Digraph::from_arcs(4, &[(1, 0), (2, 0), (3, 0), (1, 3), (2, 3)]).unwrap();
        assert_eq!(d_separation_graphoid(&d).unwrap(), r("23"));
        assert_eq!(d_separation_graphoid(&Digraph::new(4).unwrap()).unwrap(), Relation::full(4).unwrap());
        let cyc = Digraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(d_separation_graphoid(&cyc), Err(Error::CyclicDigraph));
    }

    #[test]
    fn text_round_trip() {
        let g = Graph::parse("m=4\n1-2\n3-4\n").unwrap();
        assert_eq!(Graph::parse(&g.to_string()).unwrap(), g);
        let d = Digraph::parse("m=4\n2>1\n3>1\n").unwrap();
        assert_eq!(Digraph::parse(&d.to_string()).unwrap(), d);
        assert!(Graph::parse("1-2").is_err());
        assert!(Graph::parse("m=4\n1-1").is_err());
    }
}
