//! The `apt-graph v1` text format.
//!
//! ```text
//! apt-graph v1 <class> <n> [alphabet]
//! u v            # simple
//! u v >          # oriented, u -> v
//! u v <          # oriented, v -> u
//! u v label      # labelled
//! ```
//!
//! Comments run from `#` to end of line; blank lines are skipped. The
//! writer emits the canonical form (edges sorted by endpoints), and parsing
//! a canonical file and writing it back is byte-identical.

use anyhow::{anyhow, bail, Context, Result};
use apt_kernel::graph::{Edge, Graph, GraphClass, Orientation};

pub fn parse(text: &str) -> Result<Graph> {
    let mut header: Option<(GraphClass, usize)> = None;
    let mut edges: Vec<Edge> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        match &mut header {
            None => {
                if tokens.len() < 4 || tokens[0] != "apt-graph" || tokens[1] != "v1" {
                    bail!("line {line_no}: expected header `apt-graph v1 <class> <n> [alphabet]`");
                }
                let n: usize = tokens[3]
                    .parse()
                    .with_context(|| format!("line {line_no}: invalid vertex count"))?;
                let class = match tokens[2] {
                    "simple" if tokens.len() == 4 => GraphClass::Simple,
                    "oriented" if tokens.len() == 4 => GraphClass::Oriented,
                    "labelled" if tokens.len() == 5 => {
                        let alphabet: u32 = tokens[4].parse().with_context(|| {
                            format!("line {line_no}: invalid alphabet size")
                        })?;
                        GraphClass::Labelled(alphabet)
                    }
                    other => bail!("line {line_no}: unknown graph class `{other}`"),
                };
                header = Some((class, n));
            }
            Some((class, _)) => {
                if tokens.len() < 2 {
                    bail!("line {line_no}: expected `u v ...`");
                }
                let u: usize = tokens[0]
                    .parse()
                    .with_context(|| format!("line {line_no}: invalid vertex id"))?;
                let v: usize = tokens[1]
                    .parse()
                    .with_context(|| format!("line {line_no}: invalid vertex id"))?;
                let edge = match class {
                    GraphClass::Simple => {
                        if tokens.len() != 2 {
                            bail!("line {line_no}: simple edges take no extra data");
                        }
                        Edge::simple(u, v)
                    }
                    GraphClass::Oriented => {
                        if tokens.len() != 3 {
                            bail!("line {line_no}: oriented edges need `>` or `<`");
                        }
                        match tokens[2] {
                            ">" => Edge::arc(u, v),
                            "<" => Edge::arc(v, u),
                            other => {
                                bail!("line {line_no}: invalid orientation `{other}`")
                            }
                        }
                    }
                    GraphClass::Labelled(_) => {
                        if tokens.len() != 3 {
                            bail!("line {line_no}: labelled edges need a label");
                        }
                        let label: u32 = tokens[2]
                            .parse()
                            .with_context(|| format!("line {line_no}: invalid label"))?;
                        Edge::labelled(u, v, label)
                    }
                };
                edges.push(edge);
            }
        }
    }
    let (class, n) = header.ok_or_else(|| anyhow!("empty graph file"))?;
    Graph::new(n, class, edges).map_err(|e| anyhow!("invalid graph: {e}"))
}

pub fn write(g: &Graph) -> String {
    let mut out = String::new();
    match g.class() {
        GraphClass::Simple => {
            out.push_str(&format!("apt-graph v1 simple {}\n", g.vertex_count()))
        }
        GraphClass::Oriented => {
            out.push_str(&format!("apt-graph v1 oriented {}\n", g.vertex_count()))
        }
        GraphClass::Labelled(alphabet) => out.push_str(&format!(
            "apt-graph v1 labelled {} {alphabet}\n",
            g.vertex_count()
        )),
    }
    for e in g.edges() {
        match (e.orientation, e.label) {
            (Some(Orientation::Forward), _) => out.push_str(&format!("{} {} >\n", e.u, e.v)),
            (Some(Orientation::Backward), _) => out.push_str(&format!("{} {} <\n", e.u, e.v)),
            (None, Some(label)) => out.push_str(&format!("{} {} {label}\n", e.u, e.v)),
            (None, None) => out.push_str(&format!("{} {}\n", e.u, e.v)),
        }
    }
    out
}
