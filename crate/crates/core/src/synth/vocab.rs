//! Bundled themed word lists for titles, labels and legends.
//!
//! Each theme names an x-axis entity, a pool of category values for that
//! entity, quantity names for the y-axis and series names for legends.

use crate::lang::pluralize;
use rand::Rng;

pub struct Theme {
    pub name: &'static str,
    pub x_label: &'static str,
    pub categories: &'static [&'static str],
    pub quantities: &'static [&'static str],
    pub legends: &'static [&'static str],
}

pub const THEMES: &[Theme] = &[
    Theme {
        name: "economics",
        x_label: "Country",
        categories: &[
            "France", "Germany", "Japan", "Brazil", "Canada", "Italy", "Spain", "Mexico",
            "India", "Australia", "Norway", "Poland", "Kenya", "Chile", "Egypt", "Turkey",
        ],
        quantities: &[
            "Revenue", "Exports", "GDP Growth", "Inflation Rate", "Net Profit", "Market Share",
        ],
        legends: &[
            "North Region", "South Region", "East Region", "West Region", "Domestic", "Overseas",
        ],
    },
    Theme {
        name: "science",
        x_label: "Material",
        categories: &[
            "Copper", "Iron", "Aluminum", "Silicon", "Titanium", "Nickel", "Zinc", "Carbon",
            "Silver", "Cobalt", "Lithium", "Magnesium", "Platinum", "Quartz",
        ],
        quantities: &[
            "Conductivity", "Density", "Melting Point", "Tensile Strength", "Hardness",
            "Thermal Expansion",
        ],
        legends: &["Lab A", "Lab B", "Lab C", "Pilot Plant", "Field Test", "Control Batch"],
    },
    Theme {
        name: "demographics",
        x_label: "Age Group",
        categories: &[
            "Under 15", "15-19", "20-24", "25-29", "30-34", "35-39", "40-44", "45-49",
            "50-54", "55-59", "60-64", "65 and over",
        ],
        quantities: &[
            "Population", "Median Income", "Employment Rate", "Literacy Rate", "Urban Share",
            "Life Expectancy",
        ],
        legends: &["Northville", "Southport", "Eastburg", "Westfield", "Riverside", "Hilltop"],
    },
    Theme {
        name: "retail",
        x_label: "Product",
        categories: &[
            "Laptops", "Phones", "Tablets", "Monitors", "Printers", "Keyboards", "Cameras",
            "Speakers", "Routers", "Drones", "Headsets", "Chargers", "Consoles", "Webcams",
        ],
        quantities: &[
            "Units Sold", "Sales", "Returns", "Customer Rating", "Stock Level", "Profit Margin",
        ],
        legends: &["Online", "In-Store", "Wholesale", "Outlet", "Partner Stores", "Flagship"],
    },
];

pub fn by_name(name: &str) -> Option<&'static Theme> {
    THEMES.iter().find(|t| t.name == name)
}

pub fn pick(rng: &mut impl Rng) -> &'static Theme {
    &THEMES[rng.gen_range(0..THEMES.len())]
}

/// Seeded chart title built from theme words.
pub fn title(theme: &Theme, quantity: &str, rng: &mut impl Rng) -> String {
    let xs = pluralize(theme.x_label);
    match rng.gen_range(0u32..4) {
        0 => format!("{quantity} by {}", theme.x_label),
        1 => format!("{quantity} across {xs}"),
        2 => format!("Comparison of {quantity}"),
        _ => format!("{quantity} Overview"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn themes_are_large_enough_for_radar_axes() {
        for theme in THEMES {
            assert!(theme.categories.len() >= 12, "theme {} too small", theme.name);
            assert!(theme.quantities.len() >= 4);
            assert!(theme.legends.len() >= 4);
        }
    }

    #[test]
    fn category_lists_have_no_duplicates() {
        for theme in THEMES {
            let mut seen = theme.categories.to_vec();
            seen.sort_unstable();
            seen.dedup();
            assert_eq!(seen.len(), theme.categories.len());
        }
    }
}
