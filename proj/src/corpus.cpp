#include "coanet/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "coanet/csv.hpp"
#include "coanet/ingest.hpp"
#include "coanet/names.hpp"
#include "coanet/util.hpp"

#include <json.hpp>

namespace coanet {

CorpusSpec default_corpus_spec() {
    return CorpusSpec{};
}

CorpusSpec fixture_corpus_spec() {
    CorpusSpec spec;
    spec.grade_samples = {{3, 6}, {4, 3}, {5, 3}, {6, 3}, {7, 3}};
    return spec;
}

namespace {

const std::vector<std::string>& first_names() {
    static const std::vector<std::string> v = {
        "Ana",     "José",      "Maria",    "João",    "Carlos",   "Fernanda", "Paulo",
        "Luiz",    "André",     "Beatriz",  "Camila",  "Diego",    "Eduardo",  "Fabiana",
        "Gustavo", "Helena",    "Igor",     "Juliana", "Kátia",    "Leonardo", "Marcos",
        "Natália", "Otávio",    "Patrícia", "Rafael",  "Sandra",   "Thiago",   "Vanessa",
        "William", "Regina",    "Sérgio",   "Tatiana", "Vitor",    "Adriana",  "Bruno",
        "Cláudia", "Daniel",    "Elaine",   "Felipe",  "Gabriela", "Henrique", "Isabela",
        "Jorge",   "Larissa",   "Maurício", "Nelson",  "Priscila", "Renato",   "Simone",
        "Valéria", "Alexandre", "Bianca",   "Célia",   "Davi",     "Estevão",  "Mônica"};
    return v;
}

const std::vector<std::string>& surnames() {
    static const std::vector<std::string> v = {
        "Silva",     "Souza",    "Oliveira",    "Santos",   "Pereira",  "Lima",
        "Carvalho",  "Ferreira", "Rodrigues",   "Almeida",  "Nascimento", "Araújo",
        "Melo",      "Barbosa",  "Ribeiro",     "Gonçalves", "Martins",  "Rocha",
        "Dias",      "Moreira",  "Nunes",       "Marques",  "Machado",  "Mendes",
        "Freitas",   "Cardoso",  "Ramos",       "Gomes",    "Castro",   "Miranda",
        "Pinto",     "Moura",    "Cavalcanti",  "Monteiro", "Moraes",   "Batista",
        "Borges",    "Teixeira", "Fonseca",     "Vieira",   "Costa",    "Barros",
        "Farias",    "Correia",  "Cunha",       "Duarte",   "Neves",    "Tavares",
        "Azevedo",   "Campos",   "Sales",       "Aguiar",   "Macedo",   "Brito",
        "Xavier",    "Peixoto",  "Serra",       "Queiroz",  "Vasconcelos", "Rezende"};
    return v;
}

const std::vector<std::string>& cities() {
    static const std::vector<std::string> v = {
        "Aracaju",       "Belem",          "Belo Horizonte", "Blumenau",      "Boa Vista",
        "Brasilia",      "Campinas",       "Campo Grande",   "Cascavel",      "Caxias do Sul",
        "Chapeco",       "Cuiaba",         "Curitiba",       "Dourados",      "Feira de Santana",
        "Florianopolis", "Fortaleza",      "Goiania",        "Ilheus",        "Itajuba",
        "Joao Pessoa",   "Joinville",      "Juiz de Fora",   "Lavras",        "Londrina",
        "Macapa",        "Maceio",         "Manaus",         "Maringa",       "Mossoro",
        "Natal",         "Niteroi",        "Ouro Preto",     "Palmas",        "Passo Fundo",
        "Pelotas",       "Petrolina",      "Piracicaba",     "Ponta Grossa",  "Porto Alegre",
        "Porto Velho",   "Recife",         "Ribeirao Preto", "Rio Branco",    "Rio de Janeiro",
        "Salvador",      "Santa Maria",    "Santarem",       "Sao Carlos",    "Sao Luis",
        "Sao Paulo",     "Sorocaba",       "Teresina",       "Uberaba",       "Uberlandia",
        "Vitoria",       "Vicosa",         "Volta Redonda",  "Bauru",         "Campina Grande",
        "Criciuma",      "Franca",         "Garanhuns",      "Imperatriz",    "Jatai",
        "Marilia",       "Paranagua",      "Patos de Minas", "Rio Grande",    "Santo Andre"};
    return v;
}

const std::vector<std::string>& title_leads() {
    static const std::vector<std::string> v = {
        "On the",    "Towards",  "Revisiting", "A Study of", "Notes on", "Improving",
        "Evaluating", "Learning", "Exploring",  "Assessing",  "Modeling", "Characterizing"};
    return v;
}

const std::vector<std::string>& title_topics() {
    static const std::vector<std::string> v = {
        "Scheduling",     "Routing",        "Classification", "Clustering",     "Indexing",
        "Compression",    "Synchronization", "Verification",  "Optimization",   "Segmentation",
        "Caching",        "Sampling",       "Ranking",        "Replication",    "Parsing",
        "Localization",   "Consensus",      "Retrieval",      "Recommendation", "Allocation",
        "Provenance",     "Virtualization", "Annotation",     "Summarization",  "Prediction"};
    return v;
}

const std::vector<std::string>& title_domains() {
    static const std::vector<std::string> v = {
        "in Wireless Networks",     "for Distributed Systems",  "in Sensor Networks",
        "for Embedded Devices",     "in Cloud Platforms",       "for Mobile Applications",
        "in Peer-to-Peer Systems",  "for Data Streams",         "in Software Repositories",
        "for Multi-Agent Systems",  "in Medical Imaging",       "for Smart Grids",
        "in Social Media",          "for Recommender Systems",  "in Vehicular Networks",
        "for Web Services",         "in Big Data Pipelines",    "for Digital Libraries",
        "in Natural Language Texts", "for Parallel Architectures"};
    return v;
}

const std::vector<std::string>& title_styles() {
    static const std::vector<std::string> v = {
        "a Comparative Analysis", "an Empirical Evaluation", "a Heuristic Approach",
        "a Probabilistic Model",  "an Incremental Algorithm", "a Hybrid Strategy",
        "an Experimental Survey", "a Lightweight Framework",  "a Formal Treatment",
        "a Case Study"};
    return v;
}

// Global naming context: every generated full name keeps a normalized edit
// distance of at least 4 from every other, so the 1-edit typo variants
// introduced in author strings still resolve to a unique researcher under
// the distance-2 matching rule.
class NameFactory {
public:
    explicit NameFactory(Rng rng) : rng_(rng) {}

    std::string fresh_name() {
        for (int attempt = 0; attempt < 1000; ++attempt) {
            std::string name = compose();
            std::string norm = normalize_name(name);
            if (far_enough(norm)) {
                taken_.push_back(norm);
                return name;
            }
        }
        throw std::runtime_error("name pool exhausted");
    }

private:
    std::string compose() {
        const auto& fn = first_names();
        const auto& sn = surnames();
        std::string first = rng_.pick(fn);
        std::string middle = rng_.pick(fn);
        std::string last = rng_.pick(sn);
        std::string last2 = rng_.pick(sn);
        int shape = static_cast<int>(rng_.below(100));
        bool use_middle = (shape >= 25 && shape < 60) || shape >= 85;
        bool use_last2 = shape >= 60;
        std::string name = first;
        if (use_middle && middle != first) name += " " + middle;
        name += " " + last;
        if (use_last2 && last2 != last) name += " " + last2;
        return name;
    }

    bool far_enough(const std::string& norm) const {
        for (const std::string& other : taken_) {
            if (other.size() + 3 < norm.size() || norm.size() + 3 < other.size()) continue;
            if (levenshtein_capped(norm, other, 3) <= 3) return false;
        }
        return true;
    }

    Rng rng_;
    std::vector<std::string> taken_;
};

// Strips diacritics but keeps case and spacing; models names entered without
// accents.
std::string accent_stripped(const std::string& name) {
    std::string out;
    out.reserve(name.size());
    for (std::size_t i = 0; i < name.size();) {
        unsigned char c = static_cast<unsigned char>(name[i]);
        if (c < 0x80) {
            out += static_cast<char>(c);
            ++i;
            continue;
        }
        // two-byte sequences cover the Latin-1 accents used in the name pools
        if ((c & 0xe0) == 0xc0 && i + 1 < name.size()) {
            char32_t cp = static_cast<char32_t>(((c & 0x1f) << 6) |
                                                (static_cast<unsigned char>(name[i + 1]) & 0x3f));
            std::string folded = normalize_name(std::string(name.substr(i, 2)));
            bool upper = cp >= 0x00c0 && cp <= 0x00dd;
            if (!folded.empty()) {
                if (upper) folded[0] = static_cast<char>(folded[0] - 'a' + 'A');
                out += folded;
            }
            i += 2;
            continue;
        }
        out += static_cast<char>(c);
        ++i;
    }
    return out;
}

std::string typo_variant(const std::string& name, Rng& rng) {
    // substitute one ASCII letter; never the first character of a word
    std::vector<std::size_t> positions;
    for (std::size_t i = 1; i < name.size(); ++i) {
        char c = name[i];
        char prev = name[i - 1];
        if (c >= 'a' && c <= 'z' && prev != ' ') positions.push_back(i);
    }
    if (positions.empty()) return name;
    std::string out = name;
    std::size_t at = positions[static_cast<std::size_t>(rng.below(positions.size()))];
    char replacement = static_cast<char>('a' + rng.below(26));
    if (replacement == out[at]) replacement = replacement == 'z' ? 'a' : static_cast<char>(replacement + 1);
    out[at] = replacement;
    return out;
}

struct Researcher {
    std::string id;
    std::string name;
    bool senior = false;
    std::vector<Publication> publications;
};

struct Program {
    std::string id;
    std::string name;
    std::string institution;
    std::string area = "Computer Science";
    Modality modality = Modality::Academic;
    std::vector<int> member_idx;              // indices into the researcher table
    std::vector<std::string> chaff_members;   // roster-only names without resumes
    std::map<std::string, int> grades;        // per period label
};

class CorpusBuilder {
public:
    CorpusBuilder(std::uint64_t seed, const CorpusSpec& spec)
        : spec_(spec), rng_(Rng(seed).derive(1)), names_(Rng(seed).derive(2)) {}

    std::map<std::string, std::string> build();

private:
    std::string author_string(const Researcher& r, Rng& rng) {
        double roll = rng.real01();
        if (roll < 0.72) return r.name;
        if (roll < 0.90) return accent_stripped(r.name);
        return typo_variant(r.name, rng);
    }

    std::string fresh_title(int year, Rng& rng) {
        for (int attempt = 0;; ++attempt) {
            std::string title = rng.pick(title_leads()) + " " + rng.pick(title_topics()) + " " +
                                rng.pick(title_domains());
            if (attempt > 0 || rng.chance(0.35)) title += ": " + rng.pick(title_styles());
            if (attempt > 25) title += strf(" (%d)", attempt);
            if (used_titles_.emplace(normalize_name(title), year).second) return title;
        }
    }

    Publication make_publication(int year, std::vector<std::string> authors, Rng& rng,
                                 PublicationNature nature = PublicationNature::Complete) {
        Publication pub;
        pub.title = fresh_title(year, rng);
        pub.year = year;
        pub.kind = rng.chance(0.6) ? PublicationKind::EventPaper : PublicationKind::JournalArticle;
        pub.nature = nature;
        pub.authors = std::move(authors);
        return pub;
    }

    void generate_program_period(Program& program, const EvaluationPeriod& period, int grade);

    const CorpusSpec& spec_;
    Rng rng_;
    NameFactory names_;
    std::vector<Researcher> researchers_;
    std::vector<Program> programs_;
    std::vector<std::string> external_pool_;
    std::set<std::pair<std::string, int>> used_titles_;
};

void CorpusBuilder::generate_program_period(Program& program, const EvaluationPeriod& period,
                                            int grade) {
    Rng rng = rng_.derive(fnv1a64(program.id + "|" + period.label));
    const double g = grade - 3;  // 0..4
    const double period_scale = (period.end_year - period.start_year + 1) / 3.0;
    const std::size_t size = program.member_idx.size();

    auto year_in_period = [&](Rng& r) { return period.start_year + r.range(0, period.end_year - period.start_year); };

    // per-period isolated set: members without joint work this period
    double iso_frac = std::clamp(0.32 - 0.05 * g + rng.real(-0.10, 0.10), 0.02, 0.60);
    std::vector<int> members = program.member_idx;
    rng.shuffle(members);
    std::size_t iso_count = std::min(size > 2 ? size - 2 : 0,
                                     static_cast<std::size_t>(std::lround(iso_frac * static_cast<double>(size))));
    std::set<int> isolated(members.begin(), members.begin() + static_cast<long>(iso_count));
    std::vector<int> connectable(members.begin() + static_cast<long>(iso_count), members.end());

    // joint intra-program publications
    double joint_rate = (0.40 + 0.35 * g) * period_scale * rng.real(0.85, 1.15);
    long n_joint = std::max<long>(1, std::lround(joint_rate * static_cast<double>(size)));
    double p_senior_last = std::clamp(0.25 + 0.14 * g + rng.real(-0.06, 0.06), 0.05, 0.95);
    for (long p = 0; p < n_joint && connectable.size() >= 2; ++p) {
        int roll = static_cast<int>(rng.below(100));
        std::size_t internal_count = roll < 50 ? 2 : roll < 80 ? 3 : roll < 95 ? 4 : 5;
        internal_count = std::min(internal_count, connectable.size());

        std::vector<int> chosen = connectable;
        for (std::size_t i = 0; i < internal_count; ++i) {
            std::size_t j = i + static_cast<std::size_t>(rng.below(chosen.size() - i));
            std::swap(chosen[i], chosen[j]);
        }
        chosen.resize(internal_count);

        // order: optionally a senior member closes the author list
        std::vector<int> order = chosen;
        rng.shuffle(order);
        if (rng.chance(p_senior_last)) {
            auto senior_it = std::find_if(order.begin(), order.end(),
                                          [&](int idx) { return researchers_[static_cast<std::size_t>(idx)].senior; });
            if (senior_it != order.end()) {
                int senior = *senior_it;
                order.erase(senior_it);
                // a junior opens the list when one exists
                auto junior_it = std::find_if(order.begin(), order.end(),
                                              [&](int idx) { return !researchers_[static_cast<std::size_t>(idx)].senior; });
                if (junior_it != order.end()) std::iter_swap(order.begin(), junior_it);
                order.push_back(senior);
            }
        }

        std::vector<std::string> authors;
        for (int idx : order) authors.push_back(author_string(researchers_[static_cast<std::size_t>(idx)], rng));
        if (rng.chance(0.30) && !external_pool_.empty()) {
            std::size_t extras = 1 + rng.below(2);
            for (std::size_t e = 0; e < extras; ++e) {
                std::size_t at = 1 + rng.below(authors.size());  // never first; keeps planted openers
                authors.insert(authors.begin() + static_cast<long>(at), rng.pick(external_pool_));
            }
        }

        Publication pub = make_publication(year_in_period(rng), authors, rng);
        for (int idx : chosen) researchers_[static_cast<std::size_t>(idx)].publications.push_back(pub);
    }

    // solo and external-collaboration publications
    double solo_rate = std::max(0.2, (1.5 - 0.22 * g) * rng.real(0.85, 1.15));
    for (int idx : program.member_idx) {
        Researcher& r = researchers_[static_cast<std::size_t>(idx)];
        double rate = solo_rate * (isolated.count(idx) ? 1.2 : 1.0);
        long count = static_cast<long>(rate) + (rng.chance(rate - std::floor(rate)) ? 1 : 0);
        for (long s = 0; s < count; ++s)
            r.publications.push_back(make_publication(year_in_period(rng), {r.name}, rng));

        if (rng.chance(0.25) && !external_pool_.empty()) {
            std::vector<std::string> authors;
            std::size_t externals = 1 + rng.below(3);
            for (std::size_t e = 0; e < externals; ++e) authors.push_back(rng.pick(external_pool_));
            std::size_t at = rng.below(authors.size() + 1);
            authors.insert(authors.begin() + static_cast<long>(at), author_string(r, rng));
            r.publications.push_back(make_publication(year_in_period(rng), authors, rng));
        }

        // chaff the filters: off-nature and out-of-window entries
        if (rng.chance(0.20))
            r.publications.push_back(make_publication(year_in_period(rng), {r.name}, rng,
                                                      PublicationNature::Other));
        if (rng.chance(0.15)) {
            static const int off_years[] = {2005, 2006, 2017, 2018};
            int year = off_years[rng.below(4)];
            r.publications.push_back(make_publication(year, {r.name}, rng));
        }
    }
}

std::map<std::string, std::string> CorpusBuilder::build() {
    if (spec_.periods.empty()) throw InvalidSpec("no evaluation periods");
    if (spec_.grade_samples.empty()) throw InvalidSpec("no grade sample counts");
    long total_samples = 0;
    for (const auto& [grade, count] : spec_.grade_samples) {
        if (grade < 3 || grade > 7) throw InvalidSpec("grade outside 3..7");
        if (count < 1) throw InvalidSpec("sample count must be >= 1");
        total_samples += count;
    }

    // flat ascending grade list sliced into programs
    std::vector<int> flat;
    for (const auto& [grade, count] : spec_.grade_samples)
        for (int i = 0; i < count; ++i) flat.push_back(grade);
    const std::size_t per_program = spec_.periods.size();
    const std::size_t n_programs = (flat.size() + per_program - 1) / per_program;

    std::vector<std::string> city_pool = cities();
    rng_.shuffle(city_pool);
    if (city_pool.size() < n_programs + 2) throw InvalidSpec("more programs than available city names");

    // external co-author pool shares the global distance guarantee
    std::size_t n_external = std::max<std::size_t>(40, total_samples);
    for (std::size_t i = 0; i < n_external; ++i) external_pool_.push_back(names_.fresh_name());

    for (std::size_t p = 0; p < n_programs; ++p) {
        Program program;
        program.id = strf("P%03zu", p + 1);
        const std::string& city = city_pool[p];
        program.name = "Computing Graduate Program - " + city;
        program.institution = (p % 2 ? "Federal University of " : "State University of ") + city;

        double grade_sum = 0;
        int grade_count = 0;
        for (std::size_t i = 0; i < per_program; ++i) {
            std::size_t at = p * per_program + i;
            if (at >= flat.size()) break;
            program.grades[spec_.periods[i].label] = flat[at];
            grade_sum += flat[at];
            ++grade_count;
        }
        double mean_grade = grade_sum / grade_count;

        double base_size = 8.0 + 8.0 * (mean_grade - 3.0);
        std::size_t size = static_cast<std::size_t>(
            std::max(4L, std::lround(base_size * rng_.real(0.90, 1.10))));
        std::size_t senior_count = std::max<std::size_t>(1, std::lround(0.30 * static_cast<double>(size)));
        for (std::size_t i = 0; i < size; ++i) {
            Researcher r;
            r.id = strf("r%04zu", researchers_.size() + 1);
            r.name = names_.fresh_name();
            r.senior = i < senior_count;
            program.member_idx.push_back(static_cast<int>(researchers_.size()));
            researchers_.push_back(std::move(r));
        }
        programs_.push_back(std::move(program));
    }

    for (Program& program : programs_) {
        for (const EvaluationPeriod& period : spec_.periods) {
            auto it = program.grades.find(period.label);
            if (it == program.grades.end()) continue;
            generate_program_period(program, period, it->second);
        }
    }

    // chaff rows exercise the area/modality filters end to end; these
    // programs have no resumes and must disappear before resume matching
    if (spec_.include_chaff) {
        Program professional;
        professional.id = strf("P%03zu", programs_.size() + 1);
        professional.name = "Professional Computing Program - " + city_pool[n_programs];
        professional.institution = "Technology Center of " + city_pool[n_programs];
        professional.modality = Modality::Professional;
        professional.grades[spec_.periods.front().label] = 4;
        for (int i = 0; i < 5; ++i) professional.chaff_members.push_back(names_.fresh_name());
        programs_.push_back(std::move(professional));

        Program other_area;
        other_area.id = strf("P%03zu", programs_.size() + 1);
        other_area.name = "Applied Mathematics Program - " + city_pool[n_programs + 1];
        other_area.institution = "Federal University of " + city_pool[n_programs + 1];
        other_area.area = "Mathematics";
        other_area.grades[spec_.periods.front().label] = 5;
        for (int i = 0; i < 4; ++i) other_area.chaff_members.push_back(names_.fresh_name());
        programs_.push_back(std::move(other_area));
    }

    // assemble files
    std::map<std::string, std::string> files;

    for (Researcher& r : researchers_) {
        std::sort(r.publications.begin(), r.publications.end(),
                  [](const Publication& a, const Publication& b) {
                      return std::tie(a.year, a.title) < std::tie(b.year, b.title);
                  });
        ResumeRecord record{r.id, r.name, r.publications};
        files["resumes/resume_" + r.id.substr(1) + ".xml"] = serialize_resume(record);
    }

    std::string roster;
    append_csv_row(roster, std::vector<std::string>{"program_id", "program_name", "institution",
                                                    "area", "modality", "researcher_name",
                                                    "period_label", "grade"});
    for (const Program& program : programs_) {
        for (const EvaluationPeriod& period : spec_.periods) {
            auto grade = program.grades.find(period.label);
            if (grade == program.grades.end()) continue;
            auto emit = [&](const std::string& researcher_name) {
                append_csv_row(roster, std::vector<std::string>{
                                           program.id, program.name, program.institution,
                                           program.area, modality_name(program.modality),
                                           researcher_name, period.label,
                                           std::to_string(grade->second)});
            };
            for (int idx : program.member_idx) emit(researchers_[static_cast<std::size_t>(idx)].name);
            for (const std::string& name : program.chaff_members) emit(name);
        }
    }
    files["roster.csv"] = roster;

    nlohmann::json periods = nlohmann::json::array();
    for (const EvaluationPeriod& p : spec_.periods)
        periods.push_back({{"label", p.label}, {"start_year", p.start_year}, {"end_year", p.end_year}});
    files["periods.json"] = periods.dump(2) + "\n";

    return files;
}

}  // namespace

std::map<std::string, std::string> generate_corpus_files(std::uint64_t seed, const CorpusSpec& spec) {
    CorpusBuilder builder(seed, spec);
    return builder.build();
}

void generate_corpus(std::uint64_t seed, const CorpusSpec& spec,
                     const std::filesystem::path& out_dir) {
    auto files = generate_corpus_files(seed, spec);
    for (const auto& [rel, content] : files) write_file(out_dir / rel, content);
}

}  // namespace coanet
