#include "probtree/models/motif.hpp"

#include <memory>
#include <utility>

#include "probtree/stdlib.hpp"

namespace probtree::models {

namespace {

using NoteList = LazyList<std::int64_t>;
using NoteNode = LazyNode<std::int64_t>;

std::int64_t pitch_class(std::int64_t x) { return ((x % 12) + 12) % 12; }

enum Action : std::int64_t { kErase = 0, kUp = 1, kDown = 2, kKeep = 3 };

struct Ctx {
  std::shared_ptr<const std::vector<std::int64_t>> src;
  MotifParams params;
  NoteHook hook;
};

// One note cell: runs (and ticks the hook) only when the element is forced.
Model<std::int64_t> note_model(const Ctx& c, std::size_t i,
                               std::int64_t shift) {
  return defer([c, i, shift] {
    if (c.hook) c.hook(i);
    return pure(pitch_class((*c.src)[i] + shift));
  });
}

Model<NoteNode> segment_node(Ctx c, std::size_t lo, std::size_t hi,
                             std::int64_t shift);

// A developed segment as a lazy list: all of its decisions live inside one
// spine cell and run only when the segment's first node is demanded.
Model<NoteList> develop_segment(Ctx c, std::size_t lo, std::size_t hi,
                                std::int64_t shift) {
  Model<NoteNode> node =
      defer([c, lo, hi, shift] { return segment_node(c, lo, hi, shift); });
  return fmap(letlazy(std::move(node)),
              [](Lazy<NoteNode> cell) { return NoteList(cell); });
}

// A literal run [lo, hi): constant spine, one lazy cell per note.
Model<NoteNode> run_node(Ctx c, std::size_t lo, std::size_t hi,
                         std::int64_t shift) {
  Model<NoteList> tail = pure(NoteList::nil());
  for (std::size_t i = hi; i-- > lo + 1;) {
    tail = tail.then([c, i, shift](NoteList rest) {
      return fmap(letlazy(note_model(c, i, shift)),
                  [rest](Lazy<std::int64_t> h) {
                    return NoteList::cons(h, rest);
                  });
    });
  }
  return tail.then([c, lo, shift](NoteList rest) {
    return fmap(letlazy(note_model(c, lo, shift)),
                [rest](Lazy<std::int64_t> h) {
                  return NoteNode::make(h, rest);
                });
  });
}

// The body of a surviving segment: a single note is a leaf; otherwise the
// segment either stops as a literal run or splits at a uniform point into
// two independently developed halves, appended lazily.
Model<NoteNode> body_node(Ctx c, std::size_t lo, std::size_t hi,
                          std::int64_t shift) {
  if (hi - lo == 1) return run_node(c, lo, hi, shift);
  return flip(c.params.stop)
      .then([c, lo, hi, shift](bool stop) -> Model<NoteNode> {
        if (stop) return run_node(c, lo, hi, shift);
        return uniform(static_cast<std::int64_t>(hi - lo - 1))
            .then([c, lo, hi, shift](std::int64_t k0) {
              const std::size_t k = lo + 1 + static_cast<std::size_t>(k0);
              return develop_segment(c, lo, k, shift)
                  .then([c, k, hi, shift](NoteList left) {
                    return develop_segment(c, k, hi, shift)
                        .then([left](NoteList right) {
                          return lappend(left, right)
                              .then([](NoteList joined) {
                                return joined.force_node();
                              });
                        });
                  });
            });
      });
}

// Per-segment transform, chosen when the segment is first demanded.
Model<NoteNode> segment_node(Ctx c, std::size_t lo, std::size_t hi,
                             std::int64_t shift) {
  const MotifParams& p = c.params;
  std::vector<std::pair<double, std::int64_t>> actions = {
      {p.erase, kErase},
      {p.transpose, kUp},
      {p.transpose, kDown},
      {1.0 - p.erase - 2.0 * p.transpose, kKeep}};
  return dist_over<std::int64_t>(std::move(actions))
      .then([c, lo, hi, shift](std::int64_t a) -> Model<NoteNode> {
        if (a == kErase) return pure(NoteNode::nil());
        const std::int64_t next =
            shift + (a == kUp ? 1 : a == kDown ? -1 : 0);
        return body_node(c, lo, hi, next);
      });
}

Model<Value> match_from(NoteList list,
                        std::shared_ptr<const std::vector<std::int64_t>> dst,
                        std::size_t i) {
  return list.force_node().then([dst, i](NoteNode node) -> Model<Value> {
    if (!node.cons) {
      if (i == dst->size()) return pure(Value(true));
      return fail<Value>();  // variant ended early
    }
    if (i >= dst->size()) return fail<Value>();  // variant runs long
    Lazy<std::int64_t> head = node.cons->first;
    NoteList tail = node.cons->second;
    return head.force().then(
        [dst, i, tail](std::int64_t note) -> Model<Value> {
          if (note != (*dst)[i]) return fail<Value>();
          return match_from(tail, dst, i + 1);
        });
  });
}

}  // namespace

Model<NoteList> develop_motif(std::vector<std::int64_t> src,
                              MotifParams params, NoteHook hook) {
  Ctx c{std::make_shared<const std::vector<std::int64_t>>(std::move(src)),
        params, std::move(hook)};
  if (c.src->empty()) return pure(NoteList::nil());
  return develop_segment(c, 0, c.src->size(), 0);
}

Model<Value> motif_likelihood(std::vector<std::int64_t> src,
                              std::vector<std::int64_t> dst,
                              MotifParams params, NoteHook hook) {
  auto dp = std::make_shared<const std::vector<std::int64_t>>(std::move(dst));
  return develop_motif(std::move(src), params, std::move(hook))
      .then([dp](NoteList variant) { return match_from(variant, dp, 0); });
}

Model<Value> motif_listing(std::vector<std::int64_t> src, MotifParams params) {
  return develop_motif(std::move(src), params)
      .then([](NoteList variant) { return force_list(variant); })
      .map([](const std::vector<std::int64_t>& notes) {
        return to_value(notes);
      });
}

}  // namespace probtree::models
