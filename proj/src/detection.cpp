#include "blobscan/detection.hpp"

#include <algorithm>
#include <set>

namespace blobscan {

std::string_view to_string(Variant variant) {
    switch (variant) {
    case Variant::PropertyComparison: return "property-comparison";
    case Variant::TypeCheck: return "type-check";
    case Variant::ReferenceComparison: return "reference-comparison";
    }
    return "property-comparison";
}

std::vector<Variant> classify_variants(const BlobFinding& finding) {
    std::set<Variant> tags;
    auto tag = [&](const GuiReferenceEvidence& e) {
        switch (e.kind) {
        case EvidenceKind::PropertyAccess: tags.insert(Variant::PropertyComparison); break;
        case EvidenceKind::InstanceOfWidget: tags.insert(Variant::TypeCheck); break;
        case EvidenceKind::WidgetFieldComparison: tags.insert(Variant::ReferenceComparison); break;
        case EvidenceKind::DerivedVariable:
            if (e.terminal == EvidenceKind::PropertyAccess) tags.insert(Variant::PropertyComparison);
            break;
        default: break;
        }
    };
    for (const auto& c : finding.commands) {
        for (const auto& e : c.evidence) tag(e);
        for (const auto& e : c.context_evidence) tag(e);
    }
    return {tags.begin(), tags.end()};
}

std::vector<BlobFinding> detect_blobs(const std::vector<ListenerResult>& listeners, const DetectionConfig& config) {
    std::vector<BlobFinding> out;
    for (const auto& l : listeners) {
        if (l.command_count() < static_cast<std::size_t>(std::max(config.threshold, 1))) continue;
        BlobFinding f{l.listener, l.command_count(), l.commands, {}, {}};
        f.variants = classify_variants(f);
        bool all_state = std::all_of(f.commands.begin(), f.commands.end(),
                                     [](const GuiCommand& c) { return c.state_based; });
        if (all_state) f.notes.emplace_back("state-based");
        if (l.listener.method->is_lambda) f.notes.emplace_back("lambda-listener");
        out.push_back(std::move(f));
    }
    std::stable_sort(out.begin(), out.end(), [](const BlobFinding& a, const BlobFinding& b) {
        if (a.listener.unit->file != b.listener.unit->file) return a.listener.unit->file < b.listener.unit->file;
        return a.listener.span.begin.offset < b.listener.span.begin.offset;
    });
    return out;
}

std::array<std::size_t, 5> command_distribution(const std::vector<ListenerResult>& listeners) {
    std::array<std::size_t, 5> buckets{};
    for (const auto& l : listeners) ++buckets[std::min<std::size_t>(l.command_count(), 4)];
    return buckets;
}

} // namespace blobscan
