#ifndef PMFD_PETRI_HPP
#define PMFD_PETRI_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace pmfd {

/// Token counts per place, indexed like PetriNet::place_id.
using Marking = std::vector<std::uint32_t>;

/// Transition definition; an empty label means silent (tau).
struct TransitionDef {
    std::string id;
    std::string label;
};

/// Labeled accepting Petri net with initial and final markings. Immutable
/// after construction; arcs may only connect places and transitions.
class PetriNet {
public:
    PetriNet() = default; // empty net

    PetriNet(std::vector<std::string> places, std::vector<TransitionDef> transitions,
             std::vector<std::pair<std::string, std::string>> arcs,
             const std::map<std::string, std::uint32_t>& initial,
             const std::map<std::string, std::uint32_t>& final_marking);

    std::size_t n_places() const { return places_.size(); }
    std::size_t n_transitions() const { return transitions_.size(); }
    const std::string& place_id(std::size_t i) const { return places_[i]; }
    const std::string& transition_id(std::size_t i) const { return transitions_[i].id; }
    const std::string& label(std::size_t t) const { return transitions_[t].label; }
    bool is_silent(std::size_t t) const { return transitions_[t].label.empty(); }

    /// Index lookups; throw NetStructureError on unknown ids.
    std::size_t place_index(const std::string& id) const;
    std::size_t transition_index(const std::string& id) const;

    const std::vector<std::size_t>& inputs(std::size_t t) const { return pre_[t]; }
    const std::vector<std::size_t>& outputs(std::size_t t) const { return post_[t]; }

    const Marking& initial_marking() const { return initial_; }
    const Marking& final_marking() const { return final_; }

    const std::vector<std::pair<std::string, std::string>>& arcs() const { return arcs_; }

    /// Visible transitions sharing this label (indices, ascending).
    const std::vector<std::size_t>& transitions_with_label(const std::string& label) const;

private:
    std::vector<std::string> places_;
    std::vector<TransitionDef> transitions_;
    std::vector<std::pair<std::string, std::string>> arcs_;
    std::vector<std::vector<std::size_t>> pre_, post_;
    Marking initial_, final_;
    std::map<std::string, std::size_t> place_by_id_, transition_by_id_;
    std::map<std::string, std::vector<std::size_t>> by_label_;
    std::vector<std::size_t> no_transitions_;
};

/// Builds a marking from {place id -> tokens}; absent places hold zero.
Marking marking_from(const PetriNet& net, const std::map<std::string, std::uint32_t>& tokens);

bool is_enabled(const PetriNet& net, const Marking& m, std::size_t t);
/// All transitions whose every input place holds at least one token.
std::vector<std::size_t> enabled_transitions(const PetriNet& net, const Marking& m);
/// Consumes one token per input arc, produces one per output arc.
/// Throws NotEnabledError.
Marking fire(const PetriNet& net, const Marking& m, std::size_t t);

/// Unique source/sink places, and every node on a path from source to sink.
bool is_workflow_net(const PetriNet& net);

struct SoundnessResult {
    enum class Verdict { Sound, Unsound, Unknown };
    Verdict verdict = Verdict::Unknown;
    std::string reason;

    bool sound() const { return verdict == Verdict::Sound; }
    bool unsound() const { return verdict == Verdict::Unsound; }
};

/// Bounded explicit-state soundness check: option to complete, proper
/// completion, no dead transitions. Returns Unknown once the budget of
/// distinct markings is exhausted.
SoundnessResult check_soundness(const PetriNet& net, std::size_t marking_budget = 100000);

/// 1 / (1 + max(mean node degree - 2, 0)) with node degree = in-arcs +
/// out-arcs, averaged over all places and transitions. 1 means every node is
/// at most one-in/one-out. Throws IsolatedNodeError.
double arc_degree_simplicity(const PetriNet& net);

/// GraphViz rendering: places as circles, transitions as boxes, silent
/// transitions filled black. Node order follows construction order.
std::string export_dot(const PetriNet& net);

std::string net_to_json(const PetriNet& net);
PetriNet net_from_json(const std::string& json_text);

} // namespace pmfd

#endif
