//! Input and output formats: fan JSON, complex JSON, tables, SVG and a
//! computer-algebra script.

mod cas;
mod complex_json;
mod fan_json;
mod svg;
mod table;

pub use cas::macaulay2_script;
pub use complex_json::{complex_from_json, complex_to_json, ComplexJson};
pub use fan_json::FanInput;
pub use svg::{render_svg, SvgCounts};
pub use table::{complex_table, label_table};
