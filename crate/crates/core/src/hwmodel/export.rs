//! On-disk artifacts: a hex memory-initialization file and a TOML descriptor
//! that reloads into an equivalent table.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{layout_for_width, BramLayout};
use crate::error::{Error, Result};
use crate::fixed::FixedPointFormat;
use crate::table::{Segment, SegmentedTable, SelectorStep};

pub const DESCRIPTOR_SCHEMA: &str = "lutsplit-table/1";

/// Writes `contents` next to `path` and renames it into place, so a failed
/// write never leaves a partial file behind.
fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    if path.as_os_str().is_empty() {
        return Err(Error::io(
            path,
            std::io::Error::new(std::io::ErrorKind::InvalidInput, "empty destination path"),
        ));
    }
    let name = path
        .file_name()
        .ok_or_else(|| {
            Error::io(
                path,
                std::io::Error::new(
                    std::io::ErrorKind::InvalidInput,
                    "destination is not a file",
                ),
            )
        })?
        .to_string_lossy();
    let tmp: PathBuf = path.with_file_name(format!(".{name}.{}.tmp", std::process::id()));
    let result = (|| {
        let mut file = fs::File::create(&tmp)?;
        file.write_all(contents)?;
        file.sync_all()?;
        fs::rename(&tmp, path)
    })();
    result.map_err(|e| {
        let _ = fs::remove_file(&tmp);
        Error::io(path, e)
    })
}

/// One uppercase hex word per line, in address order.
pub fn mem_init_lines(table: &SegmentedTable) -> String {
    let fmt = table.out_fmt();
    let digits = fmt.hex_digits();
    let mut out = String::with_capacity(table.footprint() * (digits + 1));
    for &w in table.words() {
        out.push_str(&format!("{:0digits$X}\n", fmt.encode(w)));
    }
    out
}

pub fn export_mem_init(table: &SegmentedTable, path: &Path) -> Result<()> {
    write_atomic(path, mem_init_lines(table).as_bytes())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentEntry {
    pub x_start: f64,
    pub x_end: f64,
    pub delta: f64,
    pub inv_delta: f64,
    pub count: usize,
    pub base_address: usize,
}

/// Serialized form of a [`SegmentedTable`]. Key names are stable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Descriptor {
    pub schema: String,
    pub function: String,
    pub ea: f64,
    pub in_format: FixedPointFormat,
    pub out_format: FixedPointFormat,
    pub footprint: usize,
    pub boundaries: Vec<f64>,
    pub selector_depth: u32,
    /// `cmp <boundary> <threshold>`, `pass` or `leaf <segment>`.
    pub selector_preorder: Vec<String>,
    pub values: Vec<f64>,
    pub bram: Option<BramLayout>,
    pub segments: Vec<SegmentEntry>,
}

fn step_text(step: &SelectorStep) -> String {
    match step {
        SelectorStep::Compare {
            boundary,
            threshold,
        } => format!("cmp {boundary} {threshold:?}"),
        SelectorStep::Pass => "pass".into(),
        SelectorStep::Leaf(j) => format!("leaf {j}"),
    }
}

impl Descriptor {
    pub fn from_table(table: &SegmentedTable) -> Self {
        Descriptor {
            schema: DESCRIPTOR_SCHEMA.into(),
            function: table.fn_id().into(),
            ea: table.ea(),
            in_format: table.in_fmt(),
            out_format: table.out_fmt(),
            footprint: table.footprint(),
            boundaries: table.boundaries().to_vec(),
            selector_depth: table.selector().depth(),
            selector_preorder: table.selector().preorder().iter().map(step_text).collect(),
            values: table.values().to_vec(),
            bram: layout_for_width(table.footprint(), table.out_fmt().width()),
            segments: table
                .segments()
                .iter()
                .map(|s| SegmentEntry {
                    x_start: s.x_start,
                    x_end: s.x_end,
                    delta: s.delta,
                    inv_delta: s.inv_delta,
                    count: s.count,
                    base_address: s.base_address,
                })
                .collect(),
        }
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Parse(format!("cannot serialize descriptor: {e}")))
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(format!("malformed descriptor: {e}")))
    }

    /// Rebuilds the table and checks the derived parts against the recorded ones.
    pub fn into_table(self) -> Result<SegmentedTable> {
        if self.schema != DESCRIPTOR_SCHEMA {
            return Err(Error::Parse(format!(
                "unknown descriptor schema `{}` (expected `{DESCRIPTOR_SCHEMA}`)",
                self.schema
            )));
        }
        let segments = self
            .segments
            .iter()
            .map(|s| Segment {
                x_start: s.x_start,
                x_end: s.x_end,
                delta: s.delta,
                inv_delta: s.inv_delta,
                count: s.count,
                base_address: s.base_address,
            })
            .collect();
        let table = SegmentedTable::assemble(
            self.function.clone(),
            self.ea,
            self.boundaries.clone(),
            segments,
            self.values.clone(),
            self.in_format,
            self.out_format,
        )
        .map_err(|e| Error::Parse(format!("inconsistent descriptor: {e}")))?;
        let check = Descriptor::from_table(&table);
        if check.footprint != self.footprint
            || check.selector_depth != self.selector_depth
            || check.selector_preorder != self.selector_preorder
            || check.bram != self.bram
        {
            return Err(Error::Parse(
                "descriptor footprint, selector or BRAM layout disagrees with its segments".into(),
            ));
        }
        Ok(table)
    }
}

pub fn export_descriptor(table: &SegmentedTable, path: &Path) -> Result<()> {
    write_atomic(path, Descriptor::from_table(table).to_toml()?.as_bytes())
}

pub fn load_descriptor(path: &Path) -> Result<SegmentedTable> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Descriptor::from_toml(&text)?.into_table()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, FunctionSpec};
    use crate::segmentation::{plan, Partition};
    use crate::table::build_table;

    fn identity_table() -> SegmentedTable {
        let f = FunctionSpec::affine(1.0, 0.0);
        let pl = plan(&f, 1e-3, &Partition::whole(0.0, 1.0).unwrap()).unwrap();
        build_table(&f, &pl, "0:8:4".parse().unwrap(), "0:8:4".parse().unwrap()).unwrap()
    }

    #[test]
    fn identity_hex() {
        assert_eq!(mem_init_lines(&identity_table()), "00\n10\n");
    }

    #[test]
    fn negative_words_are_twos_complement() {
        let f = catalog::log();
        let pl = plan(&f, 1e-3, &Partition::whole(0.5, 0.75).unwrap()).unwrap();
        let t = build_table(
            &f,
            &pl,
            "0:16:12".parse().unwrap(),
            "1:10:6".parse().unwrap(),
        )
        .unwrap();
        let lines = mem_init_lines(&t);
        let first = lines.lines().next().unwrap();
        assert_eq!(first.len(), 3);
        // ln 0.5 * 64 = -44.36 -> -44 -> 0x3D4 in 10 bits
        assert_eq!(first, "3D4");
    }

    #[test]
    fn one_segment_descriptor() {
        let d = Descriptor::from_table(&identity_table());
        assert_eq!(d.segments.len(), 1);
        assert_eq!(d.segments[0].base_address, 0);
        assert_eq!(d.selector_preorder, vec!["leaf 0"]);
        let bram = d.bram.unwrap();
        assert_eq!(
            (bram.entry_width, bram.entries_per_bram, bram.bram_count),
            (8, 2048, 1)
        );
    }

    #[test]
    fn descriptor_text_round_trip() {
        let t = identity_table();
        let d = Descriptor::from_table(&t);
        let back = Descriptor::from_toml(&d.to_toml().unwrap()).unwrap();
        assert_eq!(back, d);
        let t2 = back.into_table().unwrap();
        assert_eq!(t2.words(), t.words());
    }

    #[test]
    fn empty_path_is_io_error() {
        let e = export_mem_init(&identity_table(), Path::new("")).unwrap_err();
        assert_eq!(e.code(), "E_IO");
    }
}
