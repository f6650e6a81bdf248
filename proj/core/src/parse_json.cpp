#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "webtabulate/error.hpp"
#include "webtabulate/ingest.hpp"

namespace webtabulate {
namespace {

// Builds a TreeNode directly from SAX events so member order and the source
// text of floating point literals survive.
class TreeBuilder : public nlohmann::json_sax<nlohmann::json> {
 public:
  bool null() override { return add_scalar(std::nullopt); }
  bool boolean(bool val) override { return add_scalar(val ? "true" : "false"); }
  bool number_integer(number_integer_t val) override { return add_scalar(std::to_string(val)); }
  bool number_unsigned(number_unsigned_t val) override { return add_scalar(std::to_string(val)); }
  bool number_float(number_float_t, const string_t& s) override { return add_scalar(s); }
  bool string(string_t& val) override { return add_scalar(std::move(val)); }
  bool binary(binary_t&) override { return false; }

  bool start_object(std::size_t) override {
    open(false);
    return true;
  }
  bool key(string_t& val) override {
    stack_.back().pending_key = std::move(val);
    return true;
  }
  bool end_object() override {
    close();
    return true;
  }
  bool start_array(std::size_t) override {
    open(true);
    return true;
  }
  bool end_array() override {
    close();
    return true;
  }

  bool parse_error(std::size_t position, const std::string&,
                   const nlohmann::detail::exception& ex) override {
    error_offset_ = position;
    error_message_ = ex.what();
    return false;
  }

  std::optional<TreeNode> take_root() { return std::move(root_); }
  std::size_t error_offset() const { return error_offset_; }
  const std::string& error_message() const { return error_message_; }

 private:
  struct Frame {
    std::string label;
    bool sequence = false;
    std::vector<TreeNode> children;
    std::string pending_key;
  };

  // Label for the next value at the current nesting level.
  std::string next_label() const {
    if (stack_.empty()) return {};
    const Frame& top = stack_.back();
    return top.sequence ? top.label : top.pending_key;
  }

  bool add_scalar(Cell value) {
    if (stack_.empty()) {
      error_message_ = "top-level value must be an object or array";
      return false;
    }
    stack_.back().children.push_back(TreeNode::leaf(next_label(), std::move(value)));
    return true;
  }

  void open(bool sequence) {
    std::string label = next_label();
    if (stack_.empty() && sequence) label = std::string(kRootElementLabel);
    stack_.push_back(Frame{std::move(label), sequence, {}, {}});
  }

  void close() {
    Frame frame = std::move(stack_.back());
    stack_.pop_back();
    const bool is_root = stack_.empty();
    // Root arrays keep the anonymous root label; their elements were labeled
    // kRootElementLabel when opened.
    std::string label = is_root ? std::string() : std::move(frame.label);
    if (frame.children.empty() && !is_root) return;
    TreeNode node = TreeNode::inner(std::move(label), std::move(frame.children), frame.sequence);
    if (is_root) {
      root_ = std::move(node);
    } else {
      stack_.back().children.push_back(std::move(node));
    }
  }

  std::vector<Frame> stack_;
  std::optional<TreeNode> root_;
  std::size_t error_offset_ = 0;
  std::string error_message_;
};

}  // namespace

TreeNode parse_json(std::string_view body) {
  TreeBuilder builder;
  const bool ok = nlohmann::json::sax_parse(body.begin(), body.end(), &builder,
                                            nlohmann::json::input_format_t::json, true);
  if (!ok) {
    throw ParseError(builder.error_offset(),
                     builder.error_message().empty() ? "invalid JSON" : builder.error_message());
  }
  auto root = builder.take_root();
  if (!root) throw ParseError(0, "top-level value must be an object or array");
  return std::move(*root);
}

}  // namespace webtabulate
