use std::collections::BTreeSet;

use serde_json::json;

use super::{RenderFormat, ReportError};
use crate::corpus::PaperId;
use crate::engine::Complementarity;

fn list(ids: &BTreeSet<PaperId>) -> String {
    ids.iter()
        .map(PaperId::as_str)
        .collect::<Vec<_>>()
        .join(", ")
}

/// Backward/forward split as counts plus memberships.
pub fn render_venn(result: &Complementarity, format: RenderFormat) -> Result<String, ReportError> {
    match format {
        RenderFormat::Json => {
            let doc = json!({
                "bs_only": result.bs_only.len(),
                "overlap": result.overlap.len(),
                "fs_only": result.fs_only.len(),
                "bs_selected": result.bs_selected.len(),
                "fs_selected": result.fs_selected.len(),
                "members": {
                    "bs_only": result.bs_only,
                    "overlap": result.overlap,
                    "fs_only": result.fs_only,
                },
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("venn serialization cannot fail");
            s.push('\n');
            Ok(s)
        }
        RenderFormat::Markdown => {
            let mut s = String::from("| Region | Count | Papers |\n| --- | --- | --- |\n");
            for (name, set) in [
                ("Backward only", &result.bs_only),
                ("Both", &result.overlap),
                ("Forward only", &result.fs_only),
            ] {
                s.push_str(&format!("| {name} | {} | {} |\n", set.len(), list(set)));
            }
            s.push_str(&format!(
                "\nBackward found {}, forward found {}, {} in common.\n",
                result.bs_selected.len(),
                result.fs_selected.len(),
                result.overlap.len()
            ));
            Ok(s)
        }
        other => Err(ReportError::UnsupportedFormat {
            format: other,
            what: "a complementarity summary",
        }),
    }
}
