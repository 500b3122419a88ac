// enrollnet.hpp - membership ingestion and the entity connectivity network
#ifndef COHORT_ENROLLNET_HPP
#define COHORT_ENROLLNET_HPP

#include "cohort/common.hpp"

#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cohort {

enum class ComponentKind { Lecture, Tutorial, Lab, Other };

// Parses the CSV spelling (LEC, TUT, LAB, OTHER); nullopt when unknown.
std::optional<ComponentKind> parse_component_kind(std::string_view text);
std::string_view to_string(ComponentKind kind);

struct EnrollmentRecord {
    std::string entity_id;
    std::string section_id;
    std::optional<ComponentKind> component_kind;
};

// Deduplicated membership rows. Entities and sections are numbered by
// first appearance in the input.
struct EnrollmentTable {
    struct Row {
        Index entity;
        Index section;
    };

    std::vector<std::string> entities;
    std::vector<std::string> sections;
    std::vector<std::optional<ComponentKind>> section_kinds; // first kind seen per section
    std::vector<Row> rows;
};

// Rows whose entity and section ids are both blank are skipped. A row with
// exactly one of them blank raises MalformedRow (1-based position). Throws
// EmptyInput when nothing remains.
EnrollmentTable load_enrollment(std::span<const EnrollmentRecord> records);

// Reads `entity_id,section_id[,component]` CSV with a mandatory header.
// MalformedRow carries the 1-based line number of the offending line.
EnrollmentTable read_enrollment_csv(std::istream &in);
EnrollmentTable read_enrollment_csv_file(const std::string &path);

enum class NetworkVariant { FullyDense, Sparse };

std::string_view to_string(NetworkVariant variant);
std::optional<NetworkVariant> parse_network_variant(std::string_view text);

struct NetworkOptions {
    NetworkVariant variant = NetworkVariant::FullyDense;
    // Sparse only: sections with more members than this are dropped.
    std::size_t max_section_size = 30;
    // Sparse only: sections of these kinds are dropped when the kind is known.
    std::set<ComponentKind> drop_kinds;
};

struct Neighbor {
    Index entity;
    Weight weight;
};

// Entity x section membership A and its projection C = A * A^T.
// Immutable once built. C is held as per-entity sorted neighbor rows
// (off-diagonal, non-zero only); the diagonal is the entity's section count.
class EnrollmentNetwork {
public:
    EnrollmentNetwork() = default;

    Index entity_count() const { return static_cast<Index>(entities_.size()); }
    Index section_count() const { return static_cast<Index>(sections_.size()); }

    const std::vector<std::string> &entities() const { return entities_; }
    const std::vector<std::string> &sections() const { return sections_; }
    NetworkVariant variant() const { return variant_; }

    std::span<const Index> section_members(Index section) const;
    std::span<const Index> entity_sections(Index entity) const;
    std::span<const Neighbor> neighbors(Index entity) const;

    // A[entity][section], 0 or 1.
    int adjacency(Index entity, Index section) const;

    // C[i][k] with dense semantics, diagonal included.
    Weight connectivity(Index i, Index k) const;

    // Shared-section count of two distinct entities. Throws IndexOutOfRange.
    Weight connections(Index i, Index k) const;

    // Number of non-zero upper-triangle entries of C.
    std::size_t edge_count() const { return neighbor_data_.size() / 2; }
    Index isolated_count() const;

    friend EnrollmentNetwork build_network(const EnrollmentTable &, const NetworkOptions &);

private:
    void check_entity(Index i) const;

    NetworkVariant variant_ = NetworkVariant::FullyDense;
    std::vector<std::string> entities_;
    std::vector<std::string> sections_;

    std::vector<std::size_t> member_offsets_;
    std::vector<Index> member_data_;
    std::vector<std::size_t> enrolled_offsets_;
    std::vector<Index> enrolled_data_;
    std::vector<std::size_t> neighbor_offsets_;
    std::vector<Neighbor> neighbor_data_;
};

// Fully dense keeps every section. Sparse drops oversized sections and
// sections of a dropped kind; all entities stay in the index, possibly
// isolated.
EnrollmentNetwork build_network(const EnrollmentTable &table, const NetworkOptions &options = {});

} // namespace cohort

#endif // COHORT_ENROLLNET_HPP
