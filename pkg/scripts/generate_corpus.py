#!/usr/bin/env python3
"""Generate the synthetic two-contract fixture corpus.

Deterministic (fixed seed): re-running regenerates identical files.
ServiceX is a social media service (14 policies), ServiceY an
e-commerce marketplace (15 policies); both are anonymized stand-ins
assembled from themed boilerplate sentence pools.

Usage: python3 scripts/generate_corpus.py [--out tests/fixtures/corpus]
"""

from __future__ import annotations

import argparse
import json
import random
from pathlib import Path

SUBJECTS = {
    "servicex": {
        "name": "ServiceX",
        "title": "ServiceX Terms of Service",
        "policies": [
            ("user-agreement", "User Agreement"),
            ("privacy-policy", "Privacy Policy"),
            ("content-policy", "Content Policy"),
            ("cookie-notice", "Cookie Notice"),
            ("copyright-policy", "Copyright Policy"),
            ("community-guidelines", "Community Guidelines"),
            ("advertising-terms", "Advertising Terms"),
            ("developer-terms", "Developer Terms"),
            ("moderation-policy", "Moderation Policy"),
            ("messaging-terms", "Messaging Terms"),
            ("live-streaming-policy", "Live Streaming Policy"),
            ("premium-terms", "Premium Subscription Terms"),
            ("api-data-policy", "API Data Policy"),
            ("account-security-policy", "Account Security Policy"),
        ],
    },
    "servicey": {
        "name": "ServiceY",
        "title": "ServiceY Terms of Service",
        "policies": [
            ("terms-of-service", "Terms of Service"),
            ("privacy-notice", "Privacy Notice"),
            ("returns-policy", "Returns and Refunds Policy"),
            ("shipping-policy", "Shipping and Labels Policy"),
            ("fees-policy", "Fees and Payments Policy"),
            ("seller-agreement", "Seller Agreement"),
            ("buyer-protection", "Buyer Protection Policy"),
            ("prohibited-items", "Prohibited Items Policy"),
            ("authentication-policy", "Item Authentication Policy"),
            ("promotions-terms", "Promotions and Credits Terms"),
            ("dispute-resolution", "Dispute Resolution Policy"),
            ("tax-policy", "Tax Policy"),
            ("gift-card-terms", "Gift Card Terms"),
            ("affiliate-terms", "Affiliate Program Terms"),
            ("accessibility-statement", "Accessibility Statement"),
        ],
    },
}

OPENERS = [
    "This policy explains how {name} operates and what you agree to when "
    "you use the Service.",
    "Please read this document carefully before using {name}.",
    "This section forms part of the agreement between you and {name}.",
    "By accessing {name}, you acknowledge the practices described below.",
]

BODY_SENTENCES = [
    "We may update these terms from time to time, and continued use of the "
    "Service constitutes acceptance of the revised terms.",
    "You are responsible for maintaining the confidentiality of your "
    "account credentials and for all activity under your account.",
    "We collect certain information automatically, including device "
    "identifiers, log data, and interaction data.",
    "You may not use the Service for any unlawful purpose or in violation "
    "of any applicable regulation.",
    "{name} reserves the right to suspend or terminate accounts that "
    "violate these terms.",
    "Some features of the Service may require additional terms, which "
    "will be presented to you before use.",
    "We may share information with vendors and service providers who "
    "process data on our behalf under contractual safeguards.",
    "Content that infringes the intellectual property rights of others "
    "will be removed upon valid notice.",
    "You can adjust your notification preferences in your account "
    "settings at any time.",
    "Fees, where applicable, are disclosed before you complete a "
    "transaction and are non-refundable except as required by law.",
    "We retain personal data only as long as necessary for the purposes "
    "described in this policy.",
    "Disputes that cannot be resolved informally are subject to binding "
    "individual arbitration as described in the Dispute Resolution "
    "section.",
    "The Service is provided on an as-is basis without warranties of any "
    "kind, to the maximum extent permitted by law.",
    "You grant {name} a non-exclusive, royalty-free license to host and "
    "display content you submit through the Service.",
    "Aggregated anonymized statistics may be shared with partners for "
    "analytics purposes.",
    "If a provision of these terms is found unenforceable, the remaining "
    "provisions continue in full force.",
    "We will notify you of material changes to this policy by email or "
    "in-product notice.",
    "Certain third parties provide payment processing services subject "
    "to their own terms.",
    "You may close your account at any time from the settings page, "
    "subject to pending transactions.",
    "Our liability to you is limited to the amount you paid to use the "
    "Service during the twelve months preceding a claim.",
    "Promotional credits have no cash value and expire as stated in the "
    "applicable promotion.",
    "We employ encryption and access controls designed to protect your "
    "personal data against unauthorized access.",
    "Sellers are responsible for accurately describing the condition of "
    "listed items.",
    "Buyers should inspect item descriptions and photos carefully before "
    "completing a purchase.",
    "Authentication reviews are performed for eligible items before "
    "funds are released to the seller.",
    "Shipping labels are provided for eligible orders and must be used "
    "within the stated validity window.",
    "Refund requests are reviewed within a reasonable period and "
    "resolved according to the Buyer Protection Policy.",
    "Cookies and similar technologies help us remember your preferences "
    "and measure feature usage.",
]

SECTION_THEMES = [
    "Eligibility", "Account Registration", "Acceptable Use",
    "Content and Licenses", "Purchases", "Payments", "Shipping",
    "Returns", "Data Collection", "Data Sharing", "Data Retention",
    "Cookies", "Security", "Termination", "Dispute Resolution",
    "Limitation of Liability", "Indemnification", "Governing Law",
    "Changes to These Terms", "Contact Us",
]


def _paragraph(rng: random.Random, name: str) -> str:
    n = rng.randint(2, 5)
    sentences = [rng.choice(BODY_SENTENCES).format(name=name)
                 for _ in range(n)]
    return " ".join(sentences)


def _policy_markdown(rng: random.Random, name: str, title: str) -> str:
    parts = [f"# {name} {title}", ""]
    parts.append(rng.choice(OPENERS).format(name=name))
    parts.append("")
    n_sections = rng.randint(3, 7)
    themes = rng.sample(SECTION_THEMES, n_sections)
    for theme in themes:
        parts.append(f"## {theme}")
        parts.append("")
        for _ in range(rng.randint(2, 6)):
            parts.append(_paragraph(rng, name))
            parts.append("")
        if rng.random() < 0.25:
            parts.append(f"### {theme} Details")
            parts.append("")
            for _ in range(rng.randint(1, 3)):
                parts.append(_paragraph(rng, name))
                parts.append("")
    return "\n".join(parts).rstrip() + "\n"


def _policy_html(rng: random.Random, name: str, title: str) -> str:
    parts = [f"<h1>{name} {title}</h1>"]
    parts.append(f"<p>{rng.choice(OPENERS).format(name=name)}</p>")
    for theme in rng.sample(SECTION_THEMES, rng.randint(2, 5)):
        parts.append(f"<h2>{theme}</h2>")
        for _ in range(rng.randint(2, 5)):
            parts.append(f"<p>{_paragraph(rng, name)}</p>")
    return "\n".join(parts) + "\n"


def generate(out_dir: Path) -> None:
    rng = random.Random(20240817)
    for contract_id, subject in SUBJECTS.items():
        contract_dir = out_dir / contract_id
        contract_dir.mkdir(parents=True, exist_ok=True)
        entries = []
        for order, (policy_id, title) in enumerate(subject["policies"]):
            use_html = rng.random() < 0.2
            fmt = "html" if use_html else "markdown"
            ext = "html" if use_html else "md"
            filename = f"{policy_id}.{ext}"
            body = (_policy_html(rng, subject["name"], title) if use_html
                    else _policy_markdown(rng, subject["name"], title))
            (contract_dir / filename).write_text(body, "utf-8")
            entries.append({
                "policy_id": f"{contract_id}-{policy_id}",
                "title": title,
                "format": fmt,
                "path": filename,
                "order_index": order,
            })
        manifest = {
            "contract_id": contract_id,
            "title": subject["title"],
            "policies": entries,
        }
        (contract_dir / "contract.manifest").write_text(
            json.dumps(manifest, indent=2) + "\n", "utf-8")
        print(f"wrote {contract_id}: {len(entries)} policies")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="tests/fixtures/corpus",
                        type=Path)
    args = parser.parse_args()
    generate(args.out)


if __name__ == "__main__":
    main()
