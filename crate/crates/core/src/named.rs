//! Built-in example graphs, addressable by name from the command line.
//!
//! Names: `empty`, `dot`, `arrow`, `cross`, `uc4`, `figure-eight`,
//! `bouquet:k`, `cycle:n`, `path:n`, `whiskered-loop`.

use crate::error::{Error, Result};
use crate::graph::{arrow, cycle_graph, dot, path_graph, Graph};

fn arc(s: usize, t: usize) -> (String, String, String) {
    (format!("{s}>{t}"), s.to_string(), t.to_string())
}

/// Hub `0` joined to `1..=4` by an arc each way.
pub fn cross() -> Graph {
    let arcs = (1..=4).flat_map(|i| [arc(0, i), arc(i, 0)]);
    Graph::new((0..5).map(|i| i.to_string()), arcs).expect("cross is valid")
}

/// The undirected 4-cycle: arcs `i -> i+1` and `i -> i-1` mod 4.
pub fn uc4() -> Graph {
    let arcs = (0..4).flat_map(|i| [arc(i, (i + 1) % 4), arc(i, (i + 3) % 4)]);
    Graph::new((0..4).map(|i| i.to_string()), arcs).expect("uc4 is valid")
}

/// One node with `k` loops.
pub fn bouquet(k: usize) -> Graph {
    Graph::new(["0"], (0..k).map(|i| (format!("l{i}"), "0".into(), "0".into()))).expect("bouquet is valid")
}

/// One node with two loops.
pub fn figure_eight() -> Graph {
    bouquet(2)
}

/// A loop at `0` and a whisker arc `0 -> 1`.
pub fn whiskered_loop() -> Graph {
    Graph::new(
        ["0", "1"],
        [
            ("l".into(), "0".into(), "0".into()),
            ("a".into(), "0".into(), "1".into()),
        ],
    )
    .expect("whiskered loop is valid")
}

/// Graph on nodes `0..n` with `m[i][j]` arcs from `i` to `j`.
///
/// Arc ids are `i>j` for a single arc and `i>j.k` for parallel ones.
pub fn from_multiplicities(m: &[Vec<usize>]) -> Graph {
    let n = m.len();
    let mut arcs = Vec::new();
    for (i, row) in m.iter().enumerate() {
        assert_eq!(row.len(), n, "multiplicity matrix must be square");
        for (j, &k) in row.iter().enumerate() {
            for c in 0..k {
                let id = if k == 1 { format!("{i}>{j}") } else { format!("{i}>{j}.{c}") };
                arcs.push((id, i.to_string(), j.to_string()));
            }
        }
    }
    Graph::new((0..n).map(|i| i.to_string()), arcs).expect("multiplicity graph is valid")
}

/// Every named graph within the node and arc budgets, in a fixed order.
pub fn builtin_family(max_nodes: usize, max_arcs: usize) -> Vec<(String, Graph)> {
    let mut names: Vec<String> = ["empty", "dot", "arrow", "cross", "uc4", "figure-eight", "whiskered-loop"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    names.extend((1..=max_nodes).map(|n| format!("cycle:{n}")));
    names.extend((1..max_nodes).map(|n| format!("path:{n}")));
    names.extend((1..=max_arcs).map(|k| format!("bouquet:{k}")));
    names
        .into_iter()
        .map(|name| {
            let g = by_name(&name).expect("built-in name");
            (name, g)
        })
        .filter(|(_, g)| g.node_count() <= max_nodes && g.arc_count() <= max_arcs)
        .collect()
}

/// Resolves a built-in graph name.
pub fn by_name(name: &str) -> Result<Graph> {
    let parse_index = |arg: &str| {
        arg.parse::<usize>()
            .map_err(|_| Error::InvalidArgument(format!("`{name}`: expected a nonnegative integer after `:`")))
    };
    match name.split_once(':') {
        Some(("cycle", n)) => cycle_graph(parse_index(n)?),
        Some(("path", n)) => Ok(path_graph(parse_index(n)?)),
        Some(("bouquet", k)) => Ok(bouquet(parse_index(k)?)),
        Some(_) => Err(Error::InvalidArgument(format!("unknown graph family in `{name}`"))),
        None => match name {
            "empty" => Ok(Graph::empty()),
            "dot" => Ok(dot()),
            "arrow" => Ok(arrow()),
            "cross" => Ok(cross()),
            "uc4" => Ok(uc4()),
            "figure-eight" => Ok(figure_eight()),
            "whiskered-loop" => Ok(whiskered_loop()),
            _ => Err(Error::InvalidArgument(format!("unknown graph name `{name}`"))),
        },
    }
}
