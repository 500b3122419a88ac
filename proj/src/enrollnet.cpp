// enrollnet.cpp - membership ingestion and network construction
#include "cohort/enrollnet.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <unordered_map>

namespace cohort {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

// One CSV record without embedded newlines; double quotes may wrap a field.
std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no)
{
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back(trim(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    if (quoted)
        throw MalformedRow(line_no, "unterminated quote");
    fields.emplace_back(trim(field));
    return fields;
}

} // namespace

std::optional<ComponentKind> parse_component_kind(std::string_view text)
{
    const auto t = lower(trim(text));
    if (t == "lec")
        return ComponentKind::Lecture;
    if (t == "tut")
        return ComponentKind::Tutorial;
    if (t == "lab")
        return ComponentKind::Lab;
    if (t == "other")
        return ComponentKind::Other;
    return std::nullopt;
}

std::string_view to_string(ComponentKind kind)
{
    switch (kind) {
    case ComponentKind::Lecture: return "LEC";
    case ComponentKind::Tutorial: return "TUT";
    case ComponentKind::Lab: return "LAB";
    case ComponentKind::Other: return "OTHER";
    }
    return "OTHER";
}

std::string_view to_string(NetworkVariant variant)
{
    return variant == NetworkVariant::Sparse ? "sparse" : "dense";
}

std::optional<NetworkVariant> parse_network_variant(std::string_view text)
{
    const auto t = lower(trim(text));
    if (t == "dense" || t == "fully_dense")
        return NetworkVariant::FullyDense;
    if (t == "sparse")
        return NetworkVariant::Sparse;
    return std::nullopt;
}

EnrollmentTable load_enrollment(std::span<const EnrollmentRecord> records)
{
    EnrollmentTable table;
    std::unordered_map<std::string, Index> entity_pos;
    std::unordered_map<std::string, Index> section_pos;
    std::unordered_map<std::uint64_t, bool> seen;

    for (std::size_t r = 0; r < records.size(); ++r) {
        const auto &rec = records[r];
        const auto entity = trim(rec.entity_id);
        const auto section = trim(rec.section_id);
        if (entity.empty() && section.empty())
            continue;
        if (entity.empty())
            throw MalformedRow(r + 1, "missing entity_id");
        if (section.empty())
            throw MalformedRow(r + 1, "missing section_id");

        auto [eit, new_entity] = entity_pos.try_emplace(std::string(entity),
                                                        static_cast<Index>(table.entities.size()));
        if (new_entity)
            table.entities.emplace_back(entity);
        auto [sit, new_section] = section_pos.try_emplace(std::string(section),
                                                          static_cast<Index>(table.sections.size()));
        if (new_section) {
            table.sections.emplace_back(section);
            table.section_kinds.push_back(rec.component_kind);
        } else if (!table.section_kinds[sit->second] && rec.component_kind) {
            table.section_kinds[sit->second] = rec.component_kind;
        }

        const std::uint64_t key = (std::uint64_t{eit->second} << 32) | sit->second;
        if (seen.emplace(key, true).second)
            table.rows.push_back({eit->second, sit->second});
    }

    if (table.rows.empty())
        throw EmptyInput();
    return table;
}

EnrollmentTable read_enrollment_csv(std::istream &in)
{
    std::string line;
    std::size_t line_no = 0;
    std::size_t columns = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0)
            line.erase(0, 3);
        if (trim(line).empty())
            continue;
        const auto header = split_csv_line(line, line_no);
        const bool ok = (header.size() == 2 || header.size() == 3) &&
                        lower(header[0]) == "entity_id" && lower(header[1]) == "section_id" &&
                        (header.size() == 2 || lower(header[2]) == "component");
        if (!ok)
            throw MalformedRow(line_no, "expected header 'entity_id,section_id[,component]'");
        columns = header.size();
        break;
    }
    if (columns == 0)
        throw EmptyInput();

    std::vector<EnrollmentRecord> records;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        auto fields = split_csv_line(line, line_no);
        if (fields.size() != columns) {
            // A trailing empty component column is tolerated.
            if (!(columns == 3 && fields.size() == 2))
                throw MalformedRow(line_no, "expected " + std::to_string(columns) + " fields, got " +
                                                std::to_string(fields.size()));
        }
        EnrollmentRecord rec{std::move(fields[0]), std::move(fields[1]), std::nullopt};
        if (fields.size() == 3 && !fields[2].empty()) {
            rec.component_kind = parse_component_kind(fields[2]);
            if (!rec.component_kind)
                throw MalformedRow(line_no, "unknown component '" + fields[2] + "'");
        }
        if (rec.entity_id.empty() != rec.section_id.empty())
            throw MalformedRow(line_no, rec.entity_id.empty() ? "missing entity_id" : "missing section_id");
        records.push_back(std::move(rec));
    }
    return load_enrollment(records);
}

EnrollmentTable read_enrollment_csv_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path);
    return read_enrollment_csv(in);
}

EnrollmentNetwork build_network(const EnrollmentTable &table, const NetworkOptions &options)
{
    const auto n_entities = table.entities.size();
    const auto n_sections = table.sections.size();

    std::vector<std::vector<Index>> members(n_sections);
    for (const auto &row : table.rows)
        members[row.section].push_back(row.entity);

    std::vector<bool> keep(n_sections, true);
    if (options.variant == NetworkVariant::Sparse) {
        for (std::size_t s = 0; s < n_sections; ++s) {
            if (members[s].size() > options.max_section_size)
                keep[s] = false;
            const auto &kind = table.section_kinds[s];
            if (kind && options.drop_kinds.count(*kind))
                keep[s] = false;
        }
    }

    EnrollmentNetwork net;
    net.variant_ = options.variant;
    net.entities_ = table.entities;

    // Retained sections keep their relative order.
    net.member_offsets_.push_back(0);
    std::vector<std::vector<Index>> enrolled(n_entities);
    for (std::size_t s = 0; s < n_sections; ++s) {
        if (!keep[s])
            continue;
        const auto new_index = static_cast<Index>(net.sections_.size());
        net.sections_.push_back(table.sections[s]);
        auto sorted = members[s];
        std::sort(sorted.begin(), sorted.end());
        for (Index e : sorted) {
            net.member_data_.push_back(e);
            enrolled[e].push_back(new_index);
        }
        net.member_offsets_.push_back(net.member_data_.size());
    }

    net.enrolled_offsets_.push_back(0);
    for (const auto &list : enrolled) {
        net.enrolled_data_.insert(net.enrolled_data_.end(), list.begin(), list.end());
        net.enrolled_offsets_.push_back(net.enrolled_data_.size());
    }

    // Row i of C by scattering over the members of i's sections.
    std::vector<Weight> scratch(n_entities, 0);
    std::vector<Index> touched;
    net.neighbor_offsets_.push_back(0);
    for (Index i = 0; i < n_entities; ++i) {
        touched.clear();
        for (Index s : net.entity_sections(i)) {
            for (Index k : net.section_members(s)) {
                if (k == i)
                    continue;
                if (scratch[k] == 0)
                    touched.push_back(k);
                ++scratch[k];
            }
        }
        std::sort(touched.begin(), touched.end());
        for (Index k : touched) {
            net.neighbor_data_.push_back({k, scratch[k]});
            scratch[k] = 0;
        }
        net.neighbor_offsets_.push_back(net.neighbor_data_.size());
    }
    return net;
}

std::span<const Index> EnrollmentNetwork::section_members(Index section) const
{
    if (section >= sections_.size())
        throw IndexOutOfRange("section index " + std::to_string(section));
    return {member_data_.data() + member_offsets_[section],
            member_offsets_[section + 1] - member_offsets_[section]};
}

std::span<const Index> EnrollmentNetwork::entity_sections(Index entity) const
{
    check_entity(entity);
    return {enrolled_data_.data() + enrolled_offsets_[entity],
            enrolled_offsets_[entity + 1] - enrolled_offsets_[entity]};
}

std::span<const Neighbor> EnrollmentNetwork::neighbors(Index entity) const
{
    check_entity(entity);
    return {neighbor_data_.data() + neighbor_offsets_[entity],
            neighbor_offsets_[entity + 1] - neighbor_offsets_[entity]};
}

int EnrollmentNetwork::adjacency(Index entity, Index section) const
{
    const auto list = entity_sections(entity);
    if (section >= sections_.size())
        throw IndexOutOfRange("section index " + std::to_string(section));
    return std::binary_search(list.begin(), list.end(), section) ? 1 : 0;
}

Weight EnrollmentNetwork::connectivity(Index i, Index k) const
{
    check_entity(i);
    check_entity(k);
    if (i == k)
        return static_cast<Weight>(entity_sections(i).size());
    const auto row = neighbors(i);
    const auto it = std::lower_bound(row.begin(), row.end(), k,
                                     [](const Neighbor &n, Index e) { return n.entity < e; });
    return (it != row.end() && it->entity == k) ? it->weight : 0;
}

Weight EnrollmentNetwork::connections(Index i, Index k) const
{
    if (i == k)
        throw std::invalid_argument("connections requires two distinct entities");
    return connectivity(i, k);
}

Index EnrollmentNetwork::isolated_count() const
{
    Index count = 0;
    for (Index i = 0; i < entity_count(); ++i)
        count += neighbors(i).empty() ? 1 : 0;
    return count;
}

void EnrollmentNetwork::check_entity(Index i) const
{
    if (i >= entities_.size())
        throw IndexOutOfRange("entity index " + std::to_string(i) + " out of range (" +
                              std::to_string(entities_.size()) + " entities)");
}

} // namespace cohort
