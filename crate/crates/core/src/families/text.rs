//! Plain-text family format: a header line `n=<int>` followed by one member
//! per line as an ascending comma-separated list of 1-based elements, with
//! `-` standing for the empty set.

use std::fmt::Write;

use super::{mask_elements, set_to_mask, Family, GroundSet};
use crate::error::{Error, Result};

pub fn format_family(f: &Family) -> String {
    let mut out = format!("n={}\n", f.ground().n());
    for &m in f.members() {
        if m == 0 {
            out.push('-');
        } else {
            let elems = mask_elements(m);
            for (i, e) in elems.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write!(out, "{e}").expect("writing to a String cannot fail");
            }
        }
        out.push('\n');
    }
    out
}

pub fn parse_family(text: &str) -> Result<Family> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing `n=<int>` header".into(),
    })?;
    let n: u32 = header
        .strip_prefix("n=")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| Error::Parse {
            line,
            msg: format!("expected `n=<int>`, found `{header}`"),
        })?;
    let ground = GroundSet::new(n)?;
    let mut members = Vec::new();
    for (line, text) in lines {
        if text == "-" {
            members.push(0);
            continue;
        }
        let elems = text
            .split(',')
            .map(|tok| tok.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse {
                line,
                msg: format!("bad element list `{text}`: {e}"),
            })?;
        if elems.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse {
                line,
                msg: format!("elements must be strictly ascending in `{text}`"),
            });
        }
        let mask = set_to_mask(ground, &elems).map_err(|e| Error::Parse {
            line,
            msg: e.to_string(),
        })?;
        members.push(mask);
    }
    Family::new(ground, members)
}
