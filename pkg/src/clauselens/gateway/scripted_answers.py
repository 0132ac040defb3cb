"""Answer tables for the scripted provider.

Keys are exact (stripped) input texts; anything not listed falls back to
the provider's heuristics. The tables pin the outputs that the fixture
corpus and the evaluation fixtures rely on.
"""

# -- power classification ----------------------------------------------

POWER_LABELS: dict[str, str] = {
    # canonical category examples
    "The service can delete specific content without prior notice and "
    "without a reason.": "Service",
    "The service can license user content to third parties.": "Service",
    "The service tracks your personal data for advertising": "Service",
    "Users are responsible for the content they post": "Neutral",
    "Users agree not to use the service for illegal purposes": "Neutral",
    "Blocking first-party cookies may limit your ability to use the "
    "service": "Neutral",
    "You can opt out of targeted advertising": "User",
    "The service does not sell your personal data": "User",
    "The service will not allow third parties to access your personal "
    "information without a legal basis": "User",
    # recorded outputs for the evaluation fixtures (known-imperfect)
    "All Buy Now purchases in a ServiceY Show are final and binding.":
        "Service",
    "Use public content for any illegal, deceptive, unethical, false, "
    "misleading, or improper purpose, including the infringement of "
    "third-party intellectual property rights.": "Neutral",
    # golden-corpus pins
    "When Your Content is created with or submitted to the Service, you "
    "grant ServiceY a worldwide, royalty-free, perpetual, irrevocable, "
    "non-exclusive, transferable, and sublicensable license to use, copy, "
    "modify, adapt, prepare derivative works of, distribute, store, "
    "perform, and display Your Content.": "Service",
}

# substring -> category, first match wins (inputs lowercased)
POWER_PATTERNS: tuple[tuple[str, str], ...] = (
    ("you grant", "Service"),
    ("we may share", "Service"),
    ("final and binding", "Service"),
    ("without notice", "Service"),
    ("we reserve the right", "Service"),
    ("tracks your", "Service"),
    ("binding individual arbitration", "Service"),
    ("waive", "Service"),
    ("opt out", "User"),
    ("does not sell", "User"),
    ("you can request deletion", "User"),
    ("you may cancel", "User"),
    ("we will notify you", "User"),
    ("right to a refund", "User"),
)

# -- relevance classification ------------------------------------------

RELEVANCE_LABELS: dict[str, str] = {
    # recorded outputs for the evaluation fixtures (known-imperfect:
    # seller-facing clauses rated High for a buyer persona)
    "Your earnings are based on the listing price and actual earnings "
    "will vary based on the final order price, Seller discounts, and any "
    "other applicable taxes and discounts.": "High",
    "ServiceY cannot guarantee that a ServiceY consignment listing will "
    "be sold or that a certain sales amount will be earned for individual "
    "items or an entire shipment.": "High",
    # golden-corpus pins
    "All Buy Now purchases in a ServiceY Show are final and binding.":
        "High",
    "When Your Content is created with or submitted to the Service, you "
    "grant ServiceY a worldwide, royalty-free, perpetual, irrevocable, "
    "non-exclusive, transferable, and sublicensable license to use, copy, "
    "modify, adapt, prepare derivative works of, distribute, store, "
    "perform, and display Your Content.": "Low",
    # constructed gold pair for classification-parsing checks
    "You care about what data is being collected and how your data can "
    "be used and shared.": "High",
    "Publishers of developer applications must renew their API tokens "
    "once per quarter.": "Low",
}

# -- summaries -----------------------------------------------------------

SUMMARIES: dict[str, str] = {
    "When Your Content is created with or submitted to the Service, you "
    "grant ServiceY a worldwide, royalty-free, perpetual, irrevocable, "
    "non-exclusive, transferable, and sublicensable license to use, copy, "
    "modify, adapt, prepare derivative works of, distribute, store, "
    "perform, and display Your Content.":
        "You grant ServiceY broad license over your content",
    "All Buy Now purchases in a ServiceY Show are final and binding.":
        "Buy Now purchases in Shows are final",
    # intentionally over the 12-word limit to exercise the truncation path
    "Any dispute arising from these terms will be resolved through "
    "binding individual arbitration, and you waive any right to "
    "participate in a class action lawsuit. You agree to indemnity "
    "obligations for claims arising from your use of the Service.":
        "Disputes must be resolved through binding individual arbitration "
        "and you waive your right to join class action lawsuits",
}

# -- phrase identification ------------------------------------------------

JARGON_TERMS: tuple[str, ...] = (
    "sublicensable license",
    "derivative works",
    "intellectual property",
    "binding individual arbitration",
    "device identifiers",
    "Authentication tokens",
    "Ad identifiers",
    "royalty-free",
    "sublicensable",
    "arbitration",
    "indemnity",
    "indemnification",
    "liability",
    "consignment",
    "chargeback",
    "severability",
    "cookies",
)

VAGUE_TERMS: tuple[str, ...] = (
    "aggregated anonymized statistics",
    "certain other information",
    "certain information",
    "similar technologies",
    "certain features",
    "other information",
    "third parties",
    "personal data",
    "any reason",
    "some of your",
    "various",
)

# -- phrase scope ---------------------------------------------------------

# phrase -> (definition, cite_retrieved_refs). When cite_retrieved_refs is
# False the definition is general-only and References stays empty.
DEFINITIONS: dict[str, tuple[str, bool]] = {
    "royalty-free": (
        "Royalty-free refers to the license to use, copy, modify, or "
        "distribute your content without requiring licensing fees.", True),
    "sublicensable": (
        "Sublicensable refers to the ability to grant further licenses to "
        "third parties to use, copy, modify, or distribute your content.",
        True),
    "ServiceY Credit": (
        "ServiceY Credit refers to non-redeemable promotional credits "
        "offered by ServiceY to be used exclusively for purchases on the "
        "Service.", True),
    "certain other information": (
        "Certain other information refers to optional details such as a "
        "bio, gender, age, location, or profile picture that you may "
        "provide when creating a ServiceY account.", True),
    "any reason": (
        "Any reason refers to ServiceY's discretion to stop providing "
        "shipping labels without needing to specify a particular cause or "
        "justification.", True),
    "aggregated anonymized statistics": (
        "Aggregated anonymized statistics refers to combined usage data "
        "with identifying details removed; which user data is aggregated "
        "is not specified in these policies.", False),
}

SCENARIOS: dict[str, str] = {
    "royalty-free":
        "Imagine you post a photo on ServiceY, and they use it in a global "
        "ad campaign without paying you. Because you agreed to a "
        "royalty-free license, ServiceY can freely use your content for "
        "commercial purposes without compensating you, reducing your "
        "control and potential earnings from your creation.",
    "ServiceY Credit":
        "Imagine Jane, a savvy shopper, receives $10 ServiceY Credit for a "
        "promotion. She buys a vintage lamp listed at $50. At checkout, "
        "ServiceY Credit reduces her total to $40, modifying applicable "
        "taxes. Jane saves money, but cannot withdraw or transfer the "
        "Credit; it only applies to ServiceY purchases.",
    "any reason":
        "Imagine you sell vintage clothes online. ServiceY provides you "
        "with prepaid shipping labels. Suddenly, without explanation, they "
        "stop offering these labels to you. This means you will need to "
        "cover shipping costs yourself, impacting your profits.",
}

QA: dict[str, str] = {
    "Can I delete my data?":
        "Yes. You can request deletion of your account and associated "
        "personal data from your account settings, and verified requests "
        "are honored within 30 days.",
}
