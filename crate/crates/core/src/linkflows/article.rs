use serde::{Deserialize, Serialize};

use crate::rdf::Iri;

use super::{DocElement, ElementKind, LinkflowsError};

/// Element counts for one article. Sections nest at most two levels:
/// `nested_sections` are spread round-robin over the top-level ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ArticleLayout {
    pub top_sections: usize,
    pub nested_sections: usize,
    pub paragraphs: usize,
    pub figures: usize,
    pub tables: usize,
    pub formulas: usize,
    pub footnotes: usize,
}

impl ArticleLayout {
    pub fn sections(&self) -> usize {
        self.top_sections + self.nested_sections
    }

    pub fn leaves(&self) -> usize {
        self.paragraphs + self.figures + self.tables + self.formulas + self.footnotes
    }

    /// Elements including the article itself.
    pub fn element_count(&self) -> usize {
        1 + self.sections() + self.leaves()
    }
}

/// Layouts of the three default articles (89 sections, 279 paragraphs,
/// 11 figures, 10 tables, 8 formulas and 2 footnotes in total).
pub fn default_layouts() -> Vec<ArticleLayout> {
    vec![
        ArticleLayout {
            top_sections: 8,
            nested_sections: 23,
            paragraphs: 98,
            figures: 4,
            tables: 3,
            formulas: 3,
            footnotes: 1,
        },
        ArticleLayout {
            top_sections: 7,
            nested_sections: 21,
            paragraphs: 87,
            figures: 3,
            tables: 4,
            formulas: 2,
            footnotes: 0,
        },
        ArticleLayout {
            top_sections: 8,
            nested_sections: 22,
            paragraphs: 94,
            figures: 4,
            tables: 3,
            formulas: 3,
            footnotes: 1,
        },
    ]
}

fn temp_iri(id: &str, local: &str, kind: ElementKind) -> Iri {
    Iri::new(format!("urn:temp:{id}-{local}#{kind}")).expect("generated IRI is valid")
}

/// Builds an article's element tree with temporary IRIs
/// (`urn:temp:{id}-…#kind`), in document order: every parent precedes its
/// children. Within a section, leaves come first, then subsections.
pub fn build_article(
    layout: &ArticleLayout,
    id: &str,
    position: u32,
) -> Result<Vec<DocElement>, LinkflowsError> {
    if layout.top_sections == 0 && (layout.nested_sections > 0 || layout.leaves() > 0) {
        return Err(LinkflowsError::Layout(format!(
            "{id}: {} subsections and {} leaves but no sections",
            layout.nested_sections,
            layout.leaves()
        )));
    }
    if id.is_empty()
        || !id
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || b == b'-' || b == b'_')
    {
        return Err(LinkflowsError::Layout(format!(
            "article id {id:?} must be alphanumeric"
        )));
    }

    // Section tree: top-level t has subsections t + k * top for k = 0, 1, ...
    let top = layout.top_sections;
    let mut subs_of: Vec<Vec<usize>> = vec![Vec::new(); top];
    for s in 0..layout.nested_sections {
        subs_of[s % top.max(1)].push(s);
    }
    // Sections in document order: (label, parent top-level index or none).
    let mut sections: Vec<(String, Option<usize>)> = Vec::with_capacity(layout.sections());
    for (t, subs) in subs_of.iter().enumerate() {
        sections.push((format!("{}", t + 1), None));
        for (k, _) in subs.iter().enumerate() {
            sections.push((format!("{}.{}", t + 1, k + 1), Some(t)));
        }
    }

    let leaf_kinds = [
        (ElementKind::Paragraph, layout.paragraphs),
        (ElementKind::Figure, layout.figures),
        (ElementKind::Table, layout.tables),
        (ElementKind::Formula, layout.formulas),
        (ElementKind::Footnote, layout.footnotes),
    ];
    let mut leaves_of: Vec<Vec<(ElementKind, usize)>> = vec![Vec::new(); sections.len()];
    let mut i = 0;
    for (kind, count) in leaf_kinds {
        for n in 0..count {
            leaves_of[i % sections.len().max(1)].push((kind, n + 1));
            i += 1;
        }
    }

    let article = DocElement {
        uri: temp_iri(id, "article", ElementKind::Article),
        kind: ElementKind::Article,
        text: format!("Article {id}"),
        parent: None,
        order_index: position,
    };
    let mut out = vec![article.clone()];

    // Index of each section's top-level section in `sections`.
    let top_pos: Vec<usize> = sections
        .iter()
        .enumerate()
        .filter(|(_, (_, p))| p.is_none())
        .map(|(i, _)| i)
        .collect();

    for (t, &tp) in top_pos.iter().enumerate().take(top) {
        let top_el = section_element(id, &sections[tp].0, &article.uri, t as u32);
        out.push(top_el.clone());
        let subs: Vec<usize> = (tp + 1..sections.len())
            .take_while(|&j| sections[j].1 == Some(t))
            .collect();
        let leaves = &leaves_of[tp];
        push_leaves(&mut out, id, &top_el.uri, leaves);
        for (k, &j) in subs.iter().enumerate() {
            let sub_el =
                section_element(id, &sections[j].0, &top_el.uri, (leaves.len() + k) as u32);
            out.push(sub_el.clone());
            push_leaves(&mut out, id, &sub_el.uri, &leaves_of[j]);
        }
    }
    Ok(out)
}

fn section_element(id: &str, label: &str, parent: &Iri, order: u32) -> DocElement {
    DocElement {
        uri: temp_iri(
            id,
            &format!("s{}", label.replace('.', "-")),
            ElementKind::Section,
        ),
        kind: ElementKind::Section,
        text: format!("Section {label}"),
        parent: Some(parent.clone()),
        order_index: order,
    }
}

fn push_leaves(out: &mut Vec<DocElement>, id: &str, parent: &Iri, leaves: &[(ElementKind, usize)]) {
    for (order, (kind, n)) in leaves.iter().enumerate() {
        let local = format!("{}{n}", &kind.name()[..3]);
        let label = {
            let mut name = kind.name().to_owned();
            name[..1].make_ascii_uppercase();
            name
        };
        out.push(DocElement {
            uri: temp_iri(id, &local, *kind),
            kind: *kind,
            text: format!("{label} {n} of article {id}."),
            parent: Some(parent.clone()),
            order_index: order as u32,
        });
    }
}
