//! Leaky tropical covers of the subdivided line.

pub mod enumerate;
pub mod export;

pub use enumerate::{
    enumerate_covers, for_each_cover, GroupedCovers, hurwitz_tropical, hurwitz_tropical_all_nu, Origin, Strand,
    TropCover, TropVertex,
};
pub use export::{check_cover_file, cover_file, export_covers, write_cover_file, CoverFile};
