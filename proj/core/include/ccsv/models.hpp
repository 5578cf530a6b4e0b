#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ccsv/lts.hpp"
#include "ccsv/vp.hpp"

namespace ccsv::models {

// ---------------------------------------------------------------------------
// Plain-LTS fixtures
// ---------------------------------------------------------------------------

Lts vending_simple();
Lts vending_complex();

Lts jobber();
Lts mallet();
Lts jobshop();       // (Jobber | Jobber | Mallet) \ {get_and_work, put}
Lts abs_jobber();
Lts abs_jobshop();   // Abs_Jobber | Abs_Jobber

Lts dispatcher_system(int n);  // (D | G_1 | ... | G_n) \ {req_i, acq_i, rel_i}
Lts dispatcher_spec();         // (start! finish!)*

Lts cycler(int i, int n);          // gamma_i? alpha_i! gamma_{next(i)}! beta_i!
Lts scheduler(int n);              // (Start | C_1 | ... | C_n) \ {gamma_i}
Lts scheduler_reference(int n);    // explicit (token, active-set) round-robin automaton

// Each session is the list of proper action names of one client.
Lts semaphore_system(const std::vector<std::vector<std::string>>& sessions);
Lts semaphore_spec(const std::vector<std::vector<std::string>>& sessions);

// ---------------------------------------------------------------------------
// Value-passing fixtures
// ---------------------------------------------------------------------------

// Bounded FIFO buffer of capacity n over messages {0..messages-1}:
// the flowchart, its direct transcription, and the reduced one-state form.
Flowchart buffer_flowchart(int n, int messages);
VpProcess buffer_process(int n, int messages);
VpProcess buffer(int n, int messages);

// One-place buffer specification Buf: In?var / Out!var.
VpProcess buf_cell(int messages, const std::string& var = "x_b");

// Certificate for buffer(1, messages) against buf_cell(messages).
MuCertificate buffer1_certificate();

// buffer(n1) feeding buffer(n2) through a hidden channel.
VpProcess buffer_chain(int n1, int n2, int messages);

// Separation of sets: Small keeps U, Large keeps V; they swap elements until
// every element of S is below every element of L. Weights range over lo..hi.
VpProcess separation_system(const std::vector<long>& u, const std::vector<long>& v,
                            long lo, long hi);

// Squaring pipeline over {0,1}: Dup feeding Mul twice, its direct
// specification, and the buffered specification it actually meets.
VpProcess multiplier();
VpProcess duplicator();
VpProcess square();
VpProcess square_spec();
VpProcess square_spec_buffered();
MuCertificate square_certificate();

// One-way protocols over a lossy, distorting channel.
VpProcess simple_protocol();   // unnumbered frames; loses/duplicates messages
VpProcess abp();               // alternating bit protocol, full composition
VpProcess abp_reduced();       // its two-state reduced form
MuCertificate abp_certificate();  // abp_reduced against buf_cell(2)

// Two-way alternating bit protocol: two combined send/receive agents with
// piggybacked acknowledgements over one two-directional channel.
VpProcess abp_double();

// Sliding window protocols, sequence numbers in Z_n, packets in {0,1}.
VpProcess swp_go_back_n(int n);
VpProcess swp_selective_repeat(int n);

// Small marked net exercising the Petri-net translation.
PetriNet petri_example();

// ---------------------------------------------------------------------------
// Randomized simulation
// ---------------------------------------------------------------------------

struct SimResult {
    std::vector<Action> trace;  // actions performed, in order
    bool deadlocked = false;
    std::string final_control;  // final (control) state
    Evaluation final_eval;      // final variable values (value-passing only)
};

// Walks up to `steps` transitions choosing uniformly among the enabled ones
// with a seeded generator; input values are drawn uniformly from the input
// variable's domain. Stops early at a deadlock.
SimResult simulate(const Lts& p, std::size_t steps, std::uint64_t seed);
SimResult simulate(const VpProcess& p, std::size_t steps, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

struct BuiltModel {
    std::optional<Lts> lts;
    std::optional<VpProcess> vp;
};

struct ModelInfo {
    std::string name;
    std::string params;   // accepted keys, human-readable
    std::string summary;
};

const std::vector<ModelInfo>& model_list();

// Builds a model by registry name; throws UnknownModelError / BadParamsError.
BuiltModel build(const std::string& name, const std::map<std::string, std::string>& params);

}  // namespace ccsv::models
