#include "piclab/model/execution.h"

namespace piclab::model {

void derive_transcripts(Execution& e, int k) {
  auto ksize = static_cast<std::size_t>(k);
  e.received.assign(ksize, Bits());
  e.bidirectional.assign(ksize, Bits());
  e.bidirectional_by_round.assign(ksize, Bits());
  e.link_logs.clear();
  e.transcript.clear();
  e.total_bits = 0;

  for (std::size_t i = 0; i < ksize && i < e.rounds.size(); ++i) {
    Bits sent;
    for (const auto& round : e.rounds[i]) {
      for (auto id : round.sent) {
        sent += e.messages[id].content;
        e.bidirectional_by_round[i] += e.messages[id].content;
      }
      for (auto id : round.read) {
        e.received[i] += e.messages[id].content;
        e.bidirectional_by_round[i] += e.messages[id].content;
      }
    }
    e.bidirectional[i] = e.received[i] + sent;
  }
  for (const auto& m : e.messages) {
    e.link_logs[{m.sender, m.receiver}] += m.content;
    e.total_bits += m.content.size();
  }
  for (const auto& r : e.received) e.transcript += r;
}

}  // namespace piclab::model
