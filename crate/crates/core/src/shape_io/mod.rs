//! Shape ingestion (PGM rasters, polygons, disks), conversion to chains and
//! JSON/SVG emitters.

mod export;
mod pgm;
mod raster;
mod shape;

pub use export::{export_json, export_svg, format_sig12, result_to_json, result_to_svg, write_atomic};
pub use pgm::{encode_pgm, load_pgm, parse_pgm, PgmOptions, DEFAULT_THRESHOLD};
pub use raster::{rasterize, rasterize_all, rasterize_onto, PolygonShape, Region, DEFAULT_MARGIN};
pub use shape::{align_shapes, BinaryShape, Frame};
