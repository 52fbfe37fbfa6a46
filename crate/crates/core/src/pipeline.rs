//! Front to DGA in one call.

use serde_json::{json, Value};

use crate::algebra::{build_dga, Dga, DgaOptions};
use crate::diagram::{
    classify_quadrants, resolve_with, validated_convention, LagrangianDiagram, QuadrantConvention,
    QuadrantSigns, ResolveOptions,
};
use crate::disks::{find_disks, Disk};
use crate::error::Result;
use crate::front::FrontWord;
use crate::grading::{chord_gradings, shade, Gradings, ShadingRule};

/// Everything computed from a front up to the disk list.
#[derive(Debug, Clone)]
pub struct Knot {
    pub front: FrontWord,
    pub diagram: LagrangianDiagram,
    pub gradings: Gradings,
    pub convention: QuadrantConvention,
    pub signs: QuadrantSigns,
    pub disks: Vec<Disk>,
}

impl Knot {
    pub fn new(front: FrontWord) -> Result<Self> {
        Self::with_options(front, ResolveOptions::default())
    }

    pub fn with_options(front: FrontWord, opts: ResolveOptions) -> Result<Self> {
        let diagram = resolve_with(&front, opts)?;
        let gradings = chord_gradings(&front, &diagram, opts.reverse_orientation)?;
        let convention = validated_convention(&diagram)?;
        let signs = classify_quadrants(&diagram, convention);
        let disks = find_disks(&diagram, &signs)?;
        Ok(Knot {
            front,
            diagram,
            gradings,
            convention,
            signs,
            disks,
        })
    }

    pub fn tb(&self) -> i32 {
        self.diagram.writhe()
    }

    pub fn rotation(&self) -> i64 {
        self.gradings.rotation
    }

    pub fn dga(&self, opts: DgaOptions) -> Result<Dga<i64>> {
        let mut dga = build_dga(&self.diagram, &self.gradings, &self.disks, opts)?;
        dga.tags.insert(
            "convention".into(),
            format!("{:?}", self.convention).to_lowercase(),
        );
        Ok(dga)
    }

    /// Diagram JSON with gradings and shading added.
    pub fn diagram_json(&self) -> Value {
        let mut v = self.diagram.to_json();
        v["gradings"] = json!(self.gradings.degrees);
        v["rotation"] = json!(self.gradings.rotation);
        v["tb"] = json!(self.tb());
        v["quadrant_convention"] = json!(format!("{:?}", self.convention).to_lowercase());
        let sh = |rule| {
            shade(&self.diagram, &self.gradings, rule)
                .iter()
                .map(|q| (0..4u8).filter(|&i| q[i as usize]).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        };
        v["shading"] = json!({"A": sh(ShadingRule::A), "B": sh(ShadingRule::B)});
        v
    }

    pub fn disks_json(&self) -> Value {
        let sa = shade(&self.diagram, &self.gradings, ShadingRule::A);
        let sb = shade(&self.diagram, &self.gradings, ShadingRule::B);
        Value::Array(
            self.disks
                .iter()
                .map(|d| {
                    json!({
                        "positive": self.diagram.chord_name(d.positive),
                        "corners": d.corners.iter()
                            .map(|&(v, q)| json!([self.diagram.chord_name(v), q]))
                            .collect::<Vec<_>>(),
                        "t_exp": d.t_exp,
                        "s_A": d.shaded_corners(&sa),
                        "s_B": d.shaded_corners(&sb),
                    })
                })
                .collect(),
        )
    }
}
