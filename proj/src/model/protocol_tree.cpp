#include "piclab/model/protocol_tree.h"

#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "piclab/model/errors.h"

namespace piclab::model {

namespace {

using nlohmann::json;

// Pattern table keyed by input ∥ private tape ∥ public tape.
struct PatternTable {
  std::vector<std::pair<std::string, Bits>> rows;

  Bits lookup(const Bits& key, const char* what) const {
    const Bits* hit = nullptr;
    for (const auto& [pattern, value] : rows) {
      bool ok = pattern.size() == key.size();
      for (std::size_t n = 0; ok && n < key.size(); ++n) {
        ok = pattern[n] == '*' || pattern[n] == key[n];
      }
      if (!ok) continue;
      if (hit) throw ModelViolation(std::string(what) + " table matches '" + key + "' twice");
      hit = &value;
    }
    if (!hit) throw ModelViolation(std::string(what) + " table has no row for '" + key + "'");
    return *hit;
  }
};

struct OutputSpec {
  std::optional<Bits> constant;
  PatternTable table;
};

struct Node {
  int sender = -1;
  int receiver = -1;
  int msg_bits = 0;
  std::optional<PatternTable> message;  // absent: the sender's input
  std::map<Bits, std::shared_ptr<const Node>> children;
  std::vector<OutputSpec> outputs;  // non-empty exactly at leaves

  bool is_leaf() const { return !outputs.empty(); }
};

struct Shape {
  int k = 0;
  std::vector<int> input_bits;
  std::vector<int> private_bits;
  int public_bits = 0;

  std::size_t key_length(int player) const {
    auto i = static_cast<std::size_t>(player);
    return static_cast<std::size_t>(input_bits[i] + private_bits[i] + public_bits);
  }
};

bool is_bits(const std::string& s, bool allow_star = false) {
  for (char c : s) {
    if (c != '0' && c != '1' && !(allow_star && c == '*')) return false;
  }
  return true;
}

PatternTable parse_table(const json& j, std::size_t key_length, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": table must be an object");
  PatternTable t;
  for (const auto& [pattern, value] : j.items()) {
    if (pattern.size() != key_length || !is_bits(pattern, true)) {
      throw ConfigError(where + ": pattern '" + pattern + "' must have " +
                        std::to_string(key_length) + " symbols from 0, 1, *");
    }
    if (!value.is_string() || !is_bits(value.get<std::string>())) {
      throw ConfigError(where + ": table values must be bit strings");
    }
    t.rows.emplace_back(pattern, value.get<std::string>());
  }
  return t;
}

std::shared_ptr<const Node> parse_node(const json& j, const Shape& shape, int depth,
                                       int& max_depth) {
  const std::string where = "tree node at depth " + std::to_string(depth);
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  max_depth = std::max(max_depth, depth);
  auto node = std::make_shared<Node>();
  if (j.contains("outputs")) {
    const auto& outs = j.at("outputs");
    if (!outs.is_array() || outs.size() != static_cast<std::size_t>(shape.k)) {
      throw ConfigError(where + ": outputs must list one entry per player");
    }
    for (int i = 0; i < shape.k; ++i) {
      const auto& o = outs[static_cast<std::size_t>(i)];
      OutputSpec spec;
      if (o.is_string()) {
        if (o.get<std::string>().empty() || !is_bits(o.get<std::string>())) {
          throw ConfigError(where + ": outputs must be non-empty bit strings");
        }
        spec.constant = o.get<std::string>();
      } else {
        spec.table = parse_table(o, shape.key_length(i), where + " output");
      }
      node->outputs.push_back(std::move(spec));
    }
    return node;
  }
  try {
    node->sender = j.at("sender").get<int>();
    node->receiver = j.at("receiver").get<int>();
    node->msg_bits = j.at("msg_bits").get<int>();
  } catch (const json::exception& ex) {
    throw ConfigError(where + ": " + ex.what());
  }
  if (node->sender < 0 || node->sender >= shape.k || node->receiver < 0 ||
      node->receiver >= shape.k || node->sender == node->receiver) {
    throw ConfigError(where + ": bad sender/receiver");
  }
  if (node->msg_bits < 1) throw ConfigError(where + ": msg_bits must be positive");
  if (j.contains("message")) {
    node->message = parse_table(j.at("message"), shape.key_length(node->sender),
                                where + " message");
    for (const auto& [pattern, value] : node->message->rows) {
      if (value.size() != static_cast<std::size_t>(node->msg_bits)) {
        throw ConfigError(where + ": message values must have msg_bits bits");
      }
    }
  } else if (shape.input_bits[static_cast<std::size_t>(node->sender)] != node->msg_bits) {
    throw ConfigError(where + ": without a message table the sender's input must have msg_bits bits");
  }
  if (!j.contains("children") || !j.at("children").is_object() || j.at("children").empty()) {
    throw ConfigError(where + ": internal nodes need children");
  }
  for (const auto& [label, child] : j.at("children").items()) {
    if (label.size() != static_cast<std::size_t>(node->msg_bits) || !is_bits(label)) {
      throw ConfigError(where + ": child label '" + label + "' must have msg_bits bits");
    }
    node->children.emplace(label, parse_node(child, shape, depth + 1, max_depth));
  }
  return node;
}

using Frontier = std::vector<const Node*>;

bool involves(const Node* n, PlayerId i) { return n->sender == i || n->receiver == i; }

Frontier closure(Frontier f, PlayerId i) {
  Frontier out;
  while (!f.empty()) {
    const Node* n = f.back();
    f.pop_back();
    if (n->is_leaf() || involves(n, i)) {
      out.push_back(n);
    } else {
      for (const auto& [label, c] : n->children) f.push_back(c.get());
    }
  }
  return out;
}

Bits view_key(const View& v) { return v.input + v.private_tape + v.public_tape; }

RoundAction tree_step(const Node* root, const View& v, int round) {
  const PlayerId i = v.player;
  const Bits key = view_key(v);
  Frontier frontier{root};
  std::size_t next_read = 0;
  for (int event = 1;; ++event) {
    frontier = closure(std::move(frontier), i);
    std::size_t leaves = 0;
    for (const Node* n : frontier) leaves += n->is_leaf() ? 1 : 0;
    if (leaves == frontier.size()) {
      std::optional<Bits> out;
      for (const Node* n : frontier) {
        const auto& spec = n->outputs[static_cast<std::size_t>(i)];
        Bits o = spec.constant ? *spec.constant : spec.table.lookup(key, "output");
        if (out && *out != o) {
          throw ModelViolation("tree protocol: output of player " + std::to_string(i) +
                               " is not determined by its view");
        }
        out = o;
      }
      if (event != round) throw ModelViolation("tree protocol: player ran past its leaf");
      RoundAction a;
      a.output = out;
      a.halt = true;
      return a;
    }
    if (leaves != 0) {
      throw ModelViolation("tree protocol: player " + std::to_string(i) +
                           " cannot tell from its view whether the protocol has ended");
    }
    const Node* first = frontier.front();
    bool sending = first->sender == i;
    for (const Node* n : frontier) {
      if ((n->sender == i) != sending || n->sender != first->sender ||
          n->receiver != first->receiver) {
        throw ModelViolation("tree protocol: next step of player " + std::to_string(i) +
                             " is not determined by its view");
      }
    }
    Frontier next;
    if (sending) {
      std::optional<Bits> msg;
      for (const Node* n : frontier) {
        Bits m = n->message ? n->message->lookup(key, "message") : v.input;
        if (msg && *msg != m) {
          throw ModelViolation("tree protocol: message of player " + std::to_string(i) +
                               " is not determined by its view");
        }
        msg = m;
      }
      if (event == round) {
        RoundAction a;
        a.sends[first->receiver] = *msg;
        return a;
      }
      for (const Node* n : frontier) {
        auto it = n->children.find(*msg);
        if (it == n->children.end()) {
          throw ModelViolation("tree protocol: no child labeled '" + *msg + "'");
        }
        next.push_back(it->second.get());
      }
    } else {
      if (event == round) {
        RoundAction a;
        a.wait_for = {first->sender};
        return a;
      }
      if (next_read >= v.received.size()) {
        throw ModelViolation("tree protocol: view is missing an awaited message");
      }
      const auto& m = v.received[next_read++];
      for (const Node* n : frontier) {
        auto it = n->children.find(m.content);
        if (it != n->children.end()) next.push_back(it->second.get());
      }
      if (next.empty()) throw ModelViolation("tree protocol: unexpected message '" + m.content + "'");
    }
    frontier = std::move(next);
  }
}

std::vector<Bits> all_strings(int bits) {
  std::vector<Bits> out;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << bits); ++v) {
    Bits b(static_cast<std::size_t>(bits), '0');
    for (int n = 0; n < bits; ++n) {
      if ((v >> (bits - 1 - n)) & 1u) b[static_cast<std::size_t>(n)] = '1';
    }
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace

TreeProtocol parse_protocol_tree(std::string_view json_text, const std::string& name) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("protocol tree is not valid JSON: ") + ex.what());
  }
  Shape shape;
  try {
    shape.k = j.at("k").get<int>();
    shape.input_bits = j.at("input_bits").get<std::vector<int>>();
    if (j.contains("tape_bits")) {
      const auto& t = j.at("tape_bits");
      shape.private_bits = t.value("players", std::vector<int>{});
      shape.public_bits = t.value("public", 0);
    }
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("protocol tree header: ") + ex.what());
  }
  if (shape.k < 2) throw ConfigError("protocol tree needs k >= 2");
  auto ks = static_cast<std::size_t>(shape.k);
  if (shape.input_bits.size() != ks) throw ConfigError("input_bits must list every player");
  if (shape.private_bits.empty()) shape.private_bits.assign(ks, 0);
  if (shape.private_bits.size() != ks) throw ConfigError("tape_bits.players must list every player");
  for (int b : shape.input_bits) {
    if (b < 0 || b > 16) throw ConfigError("input_bits must be in [0, 16]");
  }
  for (int b : shape.private_bits) {
    if (b < 0 || b > 16) throw ConfigError("tape lengths must be in [0, 16]");
  }
  if (shape.public_bits < 0 || shape.public_bits > 16) {
    throw ConfigError("tape lengths must be in [0, 16]");
  }
  if (!j.contains("tree")) throw ConfigError("protocol tree has no \"tree\" field");

  int depth = 0;
  auto root = parse_node(j.at("tree"), shape, 0, depth);

  TreeProtocol tp;
  auto& p = tp.protocol;
  p.name = j.value("name", name);
  p.k = shape.k;
  for (int b : shape.input_bits) p.input_domains.push_back(all_strings(b));
  p.private_tape_bits = shape.private_bits;
  p.public_tape_bits = shape.public_bits;
  p.max_local_rounds = depth + 2;
  for (int i = 0; i < shape.k; ++i) {
    p.programs.push_back([root](const View& v, int round) { return tree_step(root.get(), v, round); });
  }

  if (j.contains("function")) {
    const auto& f = j.at("function");
    if (!f.is_object()) throw ConfigError("function must be an object");
    auto table = std::make_shared<std::map<Bits, std::vector<Bits>>>();
    std::size_t key_len = 0;
    for (int b : shape.input_bits) key_len += static_cast<std::size_t>(b);
    for (const auto& [key, value] : f.items()) {
      if (key.size() != key_len || !is_bits(key)) {
        throw ConfigError("function key '" + key + "' must concatenate all inputs");
      }
      std::vector<Bits> outs;
      if (value.is_string()) {
        outs.assign(ks, value.get<std::string>());
      } else if (value.is_array() && value.size() == ks) {
        for (const auto& o : value) outs.push_back(o.get<std::string>());
      } else {
        throw ConfigError("function values must be a string or one string per player");
      }
      (*table)[key] = std::move(outs);
    }
    tp.function = [table](PlayerId i, std::span<const Bits> x) -> Bits {
      Bits key;
      for (const auto& xi : x) key += xi;
      auto it = table->find(key);
      if (it == table->end()) throw ConfigError("function is not defined on input '" + key + "'");
      return it->second.at(static_cast<std::size_t>(i));
    };
  }
  p.validate();
  return tp;
}

TreeProtocol load_protocol_tree(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open protocol file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  auto stem = path.substr(path.find_last_of('/') + 1);
  return parse_protocol_tree(buf.str(), stem);
}

}  // namespace piclab::model
