//! Tables, campaigns and query rendering on top of the numeric modules.

pub mod campaign;
pub mod query;
pub mod scientific;
pub mod table;

pub use campaign::{run_campaign, Campaign, CampaignConfig, CampaignReport};
pub use query::{gmin_json, gmin_query, gmin_text, parse_natural};
pub use scientific::{format_ratio, format_scientific, ScientificString};
pub use table::{emit_table, Format, TableId, TableSpec};

use serde::Serializer;

use crate::bigcomb::Natural;

/// Serialises an exact natural as a string of decimal digits.
pub fn serialize_natural<S: Serializer>(x: &Natural, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}
