use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::rdf::Iri;

use super::{DocElement, ElementKind, LinkEdge, LinkKind, LinkflowsError, ReviewComment};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Granularity {
    #[serde(rename = "paragraph-level")]
    Paragraph,
    #[serde(rename = "section-level")]
    Section,
    #[serde(rename = "article-level")]
    Article,
}

impl Granularity {
    pub const ALL: [Granularity; 3] = [
        Granularity::Paragraph,
        Granularity::Section,
        Granularity::Article,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Granularity::Paragraph => "paragraph-level",
            Granularity::Section => "section-level",
            Granularity::Article => "article-level",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TargetInfo {
    pub granularity: Granularity,
    pub innermost_section: Option<Iri>,
}

/// Classifies what a comment points at. Leaf targets report their
/// containing section, section targets themselves.
pub fn resolve_target(
    c: &ReviewComment,
    elements: &BTreeMap<Iri, DocElement>,
) -> Result<TargetInfo, LinkflowsError> {
    let target = elements
        .get(&c.target)
        .ok_or_else(|| LinkflowsError::DanglingTarget(c.target.as_str().to_owned()))?;
    Ok(match target.kind {
        ElementKind::Article => TargetInfo {
            granularity: Granularity::Article,
            innermost_section: None,
        },
        ElementKind::Section => TargetInfo {
            granularity: Granularity::Section,
            innermost_section: Some(target.uri.clone()),
        },
        _ => TargetInfo {
            granularity: Granularity::Paragraph,
            innermost_section: target.parent.clone(),
        },
    })
}

/// Checks an edge against the kinds of its endpoints.
pub fn validate_edge(
    edge: &LinkEdge,
    elements: &BTreeMap<Iri, DocElement>,
    comments: &BTreeMap<Iri, ReviewComment>,
) -> Result<(), LinkflowsError> {
    let fail = |reason: &str| {
        Err(LinkflowsError::InvalidEdge {
            kind: edge.kind,
            from: edge.from.as_str().to_owned(),
            to: edge.to.as_str().to_owned(),
            reason: reason.to_owned(),
        })
    };
    match edge.kind {
        LinkKind::RefersTo => {
            if !comments.contains_key(&edge.from) {
                return fail("source is not a review comment");
            }
            if !elements.contains_key(&edge.to) {
                return fail("target is not a document element");
            }
        }
        LinkKind::IsResponseTo => {
            if !comments.contains_key(&edge.to) {
                return fail("target is not a review comment");
            }
        }
        LinkKind::IsUpdateOf => match (elements.get(&edge.from), elements.get(&edge.to)) {
            (Some(a), Some(b)) if a.kind == b.kind => {}
            (Some(_), Some(_)) => return fail("versions differ in kind"),
            _ => return fail("both ends must be document elements"),
        },
    }
    Ok(())
}

fn adjacency(
    edges: &BTreeSet<LinkEdge>,
    kind: LinkKind,
    reverse: bool,
) -> BTreeMap<&Iri, BTreeSet<&Iri>> {
    let mut map: BTreeMap<&Iri, BTreeSet<&Iri>> = BTreeMap::new();
    for e in edges.iter().filter(|e| e.kind == kind) {
        let (a, b) = if reverse {
            (&e.from, &e.to)
        } else {
            (&e.to, &e.from)
        };
        map.entry(a).or_default().insert(b);
    }
    map
}

fn find_cycle<'a>(
    start: &'a Iri,
    next: &BTreeMap<&'a Iri, BTreeSet<&'a Iri>>,
) -> Option<Vec<String>> {
    fn dfs<'a>(
        node: &'a Iri,
        next: &BTreeMap<&'a Iri, BTreeSet<&'a Iri>>,
        path: &mut Vec<&'a Iri>,
        done: &mut BTreeSet<&'a Iri>,
    ) -> Option<Vec<String>> {
        if let Some(pos) = path.iter().position(|p| *p == node) {
            let mut cycle: Vec<String> =
                path[pos..].iter().map(|i| i.as_str().to_owned()).collect();
            cycle.push(node.as_str().to_owned());
            return Some(cycle);
        }
        if !done.insert(node) {
            return None;
        }
        path.push(node);
        for n in next.get(node).into_iter().flatten() {
            if let Some(c) = dfs(n, next, path, done) {
                return Some(c);
            }
        }
        path.pop();
        None
    }
    dfs(start, next, &mut Vec::new(), &mut BTreeSet::new())
}

fn paths<'a>(node: &'a Iri, next: &BTreeMap<&'a Iri, BTreeSet<&'a Iri>>) -> Vec<Vec<&'a Iri>> {
    match next.get(node) {
        None => vec![vec![node]],
        Some(succ) => succ
            .iter()
            .flat_map(|s| paths(s, next))
            .map(|mut p| {
                p.insert(0, node);
                p
            })
            .collect(),
    }
}

/// Every maximal `isUpdateOf` chain through `e`, oldest first, sorted.
/// An element with no versions yields the single chain `[e]`.
pub fn version_chain(e: &Iri, edges: &BTreeSet<LinkEdge>) -> Result<Vec<Vec<Iri>>, LinkflowsError> {
    // newer -> older for `isUpdateOf`; forward is older -> newer.
    let older = adjacency(edges, LinkKind::IsUpdateOf, true);
    let newer = adjacency(edges, LinkKind::IsUpdateOf, false);
    if let Some(cycle) = find_cycle(e, &older).or_else(|| find_cycle(e, &newer)) {
        return Err(LinkflowsError::Cycle(cycle));
    }
    let back: Vec<Vec<&Iri>> = paths(e, &older);
    let fwd: Vec<Vec<&Iri>> = paths(e, &newer);
    let mut chains: BTreeSet<Vec<Iri>> = BTreeSet::new();
    for b in &back {
        for f in &fwd {
            let chain: Vec<Iri> = b
                .iter()
                .rev()
                .chain(f.iter().skip(1))
                .map(|i| (*i).clone())
                .collect();
            chains.insert(chain);
        }
    }
    Ok(chains.into_iter().collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Thread {
    pub node: Iri,
    pub children: Vec<Thread>,
}

impl Thread {
    pub fn depth(&self) -> usize {
        self.children
            .iter()
            .map(|c| 1 + c.depth())
            .max()
            .unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Thread::size).sum::<usize>()
    }
}

/// The tree of transitive `isResponseTo` answers to `c`, children by URI.
pub fn response_thread(c: &Iri, edges: &BTreeSet<LinkEdge>) -> Result<Thread, LinkflowsError> {
    let answers = adjacency(edges, LinkKind::IsResponseTo, false);
    if let Some(cycle) = find_cycle(c, &answers) {
        return Err(LinkflowsError::Cycle(cycle));
    }
    fn build(node: &Iri, answers: &BTreeMap<&Iri, BTreeSet<&Iri>>) -> Thread {
        Thread {
            node: node.clone(),
            children: answers
                .get(node)
                .into_iter()
                .flatten()
                .map(|a| build(a, answers))
                .collect(),
        }
    }
    Ok(build(c, &answers))
}
