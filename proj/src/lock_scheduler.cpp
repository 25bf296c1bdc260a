#include "shardsched/lock_scheduler.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace shardsched {

namespace {

enum class MsgKind { Release, Exec, Vote, Confirm, Grant, Deny, LockReq, Retry };

struct Msg {
  MsgKind kind;
  int txn = 0;
  ObjectId object = 0;
  ShardId src = 0;
  ShardId dst = 0;
  int attempt = 0;
  bool flag = false;  // Vote: commit vote; Confirm: commit (vs abort)
};

// deterministic processing order within a round
int kind_rank(MsgKind k) {
  switch (k) {
    case MsgKind::Release: return 0;
    case MsgKind::Exec: return 1;
    case MsgKind::Vote: return 2;
    case MsgKind::Confirm: return 3;
    case MsgKind::Grant: return 4;
    case MsgKind::Deny: return 5;
    case MsgKind::LockReq: return 6;
    case MsgKind::Retry: return 7;
  }
  return 8;
}

bool msg_order(const Msg& a, const Msg& b) {
  const int ra = kind_rank(a.kind), rb = kind_rank(b.kind);
  if (ra != rb) return ra < rb;
  if (a.object != b.object) return a.object < b.object;
  if (a.txn != b.txn) return a.txn < b.txn;
  return a.src < b.src;
}

enum class ObjStatus { None, Requested, Held };
enum class Phase { Acquiring, Committing, Backoff, Done };

struct LockState {
  int holder = -1;
  std::vector<std::pair<int, int>> queue;  // (txn, attempt), sorted by txn
};

struct TxnRuntime {
  const Transaction* txn = nullptr;
  Phase phase = Phase::Acquiring;
  int attempt = 1;
  std::map<ObjectId, ObjStatus> status;
  int next_access = 0;  // locks are acquired in ascending object order
  int held = 0;
  int votes = 0;
  bool vote_abort = false;
  long long finish = 0;
  bool committed = false;
};

struct Engine {
  const ShardGraph& g;
  const std::vector<Transaction>& batch;
  LockAudit* audit;

  std::map<long long, std::vector<Msg>> inbox;
  std::map<ObjectId, LockState> locks;
  std::map<int, TxnRuntime> txns;
  std::map<ObjectId, long long> hold_start;
  MessageLedger ledger;
  std::vector<std::vector<ChainEntry>> chains;
  long long now = 0;
  long long last_progress = 0;
  int done_count = 0;

  Engine(const ShardGraph& graph, const std::vector<Transaction>& b, LockAudit* a)
      : g(graph), batch(b), audit(a) {
    chains.assign(g.shard_count(), {});
  }

  long long delay(ShardId a, ShardId b) const { return std::max(1, g.dist(a, b)); }

  void count(MsgKind kind) {
    switch (kind) {
      case MsgKind::LockReq:
      case MsgKind::Release:
        ledger.control += 1;
        break;
      case MsgKind::Grant:
      case MsgKind::Deny:
      case MsgKind::Vote:
        ledger.vote += 1;
        break;
      case MsgKind::Exec:
        ledger.subtxn_send += 1;
        break;
      case MsgKind::Confirm:
        ledger.confirm += 1;
        break;
      case MsgKind::Retry:
        break;
    }
  }

  long long send(MsgKind kind, int txn, ObjectId object, ShardId src, ShardId dst, int attempt = 0,
                 bool flag = false) {
    const long long at = now + delay(src, dst);
    if (src != dst && kind != MsgKind::Retry) count(kind);
    inbox[at].push_back({kind, txn, object, src, dst, attempt, flag});
    return at;
  }

  void record_hold_end(ObjectId o) {
    if (!audit) return;
    auto it = hold_start.find(o);
    if (it == hold_start.end()) return;
    audit->intervals.push_back({o, locks[o].holder, it->second, now});
    hold_start.erase(it);
  }

  void grant_to(ObjectId o, int txn) {
    locks[o].holder = txn;
    if (audit) hold_start[o] = now;
    send(MsgKind::Grant, txn, o, owner_of(o), txns.at(txn).txn->home);
  }

  void grant_next(ObjectId o) {
    LockState& l = locks[o];
    if (l.holder != -1 || l.queue.empty()) return;
    // hand the lock to the youngest waiter: everyone left in the queue is
    // older than the new holder, so the wait-die invariant (waiters precede
    // their holder in priority) survives the handoff without aborts
    const auto [txn, attempt] = l.queue.back();
    l.queue.pop_back();
    grant_to(o, txn);
  }

  void on_release(const Msg& m) {
    LockState& l = locks[m.object];
    if (l.holder == m.txn) {
      record_hold_end(m.object);
      l.holder = -1;
      grant_next(m.object);
    } else {
      auto it = std::find_if(l.queue.begin(), l.queue.end(),
                             [&](const auto& e) { return e.first == m.txn; });
      if (it != l.queue.end()) l.queue.erase(it);
    }
  }

  void on_lock_request(const Msg& m) {
    LockState& l = locks[m.object];
    TxnRuntime& t = txns.at(m.txn);
    if (l.holder == m.txn) {
      send(MsgKind::Grant, m.txn, m.object, owner_of(m.object), t.txn->home);
      return;
    }
    if (l.holder == -1) {
      grant_to(m.object, m.txn);
      return;
    }
    // wait-die: older requester (smaller id) waits, younger dies
    if (m.txn < l.holder) {
      auto it = std::find_if(l.queue.begin(), l.queue.end(),
                             [&](const auto& e) { return e.first == m.txn; });
      if (it != l.queue.end()) {
        it->second = m.attempt;
      } else {
        l.queue.push_back({m.txn, m.attempt});
        std::sort(l.queue.begin(), l.queue.end());
      }
    } else {
      send(MsgKind::Deny, m.txn, m.object, owner_of(m.object), t.txn->home, m.attempt);
    }
  }

  void request_next_lock(TxnRuntime& t) {
    const ObjectId obj = t.txn->accesses[t.next_access].object;
    t.status[obj] = ObjStatus::Requested;
    send(MsgKind::LockReq, t.txn->id, obj, t.txn->home, owner_of(obj), t.attempt);
  }

  void start_commit(TxnRuntime& t) {
    t.phase = Phase::Committing;
    t.votes = 0;
    t.vote_abort = false;
    for (const auto& a : t.txn->accesses)
      send(MsgKind::Exec, t.txn->id, a.object, t.txn->home, owner_of(a.object));
  }

  void on_grant(const Msg& m) {
    TxnRuntime& t = txns.at(m.txn);
    if (t.phase == Phase::Acquiring) {
      auto& st = t.status.at(m.object);
      if (st == ObjStatus::Requested) {
        st = ObjStatus::Held;
        ++t.held;
        ++t.next_access;
        last_progress = now;
        if (t.held == static_cast<int>(t.txn->accesses.size())) {
          start_commit(t);
        } else {
          request_next_lock(t);
        }
        return;
      }
      if (st == ObjStatus::Held) return;  // duplicate
    }
    if (t.phase == Phase::Committing) return;  // duplicate after completion
    // stale grant to a dead attempt: hand the lock back
    send(MsgKind::Release, m.txn, m.object, t.txn->home, owner_of(m.object));
  }

  void on_deny(const Msg& m) {
    TxnRuntime& t = txns.at(m.txn);
    if (t.phase != Phase::Acquiring || m.attempt != t.attempt) return;
    if (audit) audit->dies += 1;
    long long latest = now;
    for (auto& [obj, st] : t.status) {
      if (st == ObjStatus::Held)
        latest = std::max(latest, send(MsgKind::Release, m.txn, obj, t.txn->home, owner_of(obj)));
      st = ObjStatus::None;
    }
    t.held = 0;
    t.next_access = 0;
    t.phase = Phase::Backoff;
    t.attempt += 1;
    inbox[latest + 1].push_back(
        {MsgKind::Retry, m.txn, 0, t.txn->home, t.txn->home, t.attempt, false});
    last_progress = now;
  }

  void on_retry(const Msg& m) {
    TxnRuntime& t = txns.at(m.txn);
    if (t.phase != Phase::Backoff || m.attempt != t.attempt) return;
    t.phase = Phase::Acquiring;
    for (auto& st : t.status) st.second = ObjStatus::None;
    request_next_lock(t);
    last_progress = now;
  }

  void on_exec(const Msg& m) {
    const TxnRuntime& t = txns.at(m.txn);
    const bool ok = t.txn->condition_ok;
    send(MsgKind::Vote, m.txn, m.object, owner_of(m.object), t.txn->home, 0, ok);
  }

  void on_vote(const Msg& m) {
    TxnRuntime& t = txns.at(m.txn);
    if (t.phase != Phase::Committing) return;
    ++t.votes;
    if (!m.flag) t.vote_abort = true;
    if (t.votes < static_cast<int>(t.txn->accesses.size())) return;
    const bool commit = !t.vote_abort;
    long long finish = now + 1;
    for (const auto& a : t.txn->accesses) {
      const ShardId dst = owner_of(a.object);
      finish = std::max(finish, send(MsgKind::Confirm, m.txn, a.object, t.txn->home, dst, 0, commit));
      send(MsgKind::Release, m.txn, a.object, t.txn->home, dst);  // unlock
    }
    t.phase = Phase::Done;
    t.committed = commit;
    t.finish = finish;
    ++done_count;
    last_progress = now;
  }

  void on_confirm(const Msg& m) {
    if (m.flag) chains[owner_of(m.object)].push_back({m.txn, m.object, now});
  }

  ExecutionReport run(const LockOptions& opts) {
    for (const auto& t : batch) {
      TxnRuntime rt;
      rt.txn = &t;
      for (const auto& a : t.accesses) rt.status[a.object] = ObjStatus::None;
      txns[t.id] = rt;
    }
    now = 1;
    last_progress = 1;
    for (auto& [id, rt] : txns) request_next_lock(rt);

    const long long guard =
        opts.stall_guard_factor * std::max(1, g.diameter()) * g.shard_count();
    while (done_count < static_cast<int>(txns.size())) {
      auto it = inbox.upper_bound(now);
      if (it == inbox.end())
        throw std::runtime_error("lock scheduler stalled with no pending events at round " +
                                 std::to_string(now));
      now = it->first;
      if (now - last_progress > guard)
        throw std::runtime_error("lock scheduler made no progress for " + std::to_string(guard) +
                                 " rounds (livelock guard)");
      std::vector<Msg> msgs = std::move(it->second);
      inbox.erase(it);
      std::stable_sort(msgs.begin(), msgs.end(), msg_order);
      for (const Msg& m : msgs) {
        switch (m.kind) {
          case MsgKind::Release: on_release(m); break;
          case MsgKind::Exec: on_exec(m); break;
          case MsgKind::Vote: on_vote(m); break;
          case MsgKind::Confirm: on_confirm(m); break;
          case MsgKind::Grant: on_grant(m); break;
          case MsgKind::Deny: on_deny(m); break;
          case MsgKind::LockReq: on_lock_request(m); break;
          case MsgKind::Retry: on_retry(m); break;
        }
      }
    }
    // drain in-flight confirms/releases so chains and audit intervals complete
    while (!inbox.empty()) {
      auto it = inbox.begin();
      now = it->first;
      std::vector<Msg> msgs = std::move(it->second);
      inbox.erase(it);
      std::stable_sort(msgs.begin(), msgs.end(), msg_order);
      for (const Msg& m : msgs) {
        if (m.kind == MsgKind::Release) on_release(m);
        if (m.kind == MsgKind::Confirm) on_confirm(m);
        if (m.kind == MsgKind::Grant) on_grant(m);
      }
    }

    ExecutionReport report;
    report.chains = std::move(chains);
    report.messages = ledger;
    for (const auto& [id, rt] : txns) {
      report.per_txn[id] = TxnResult{0, rt.committed, rt.finish};
      report.makespan = std::max(report.makespan, rt.finish);
    }
    finalize_report(report);
    return report;
  }
};

}  // namespace

ExecutionReport schedule_lock_based(const ShardGraph& g, const std::vector<Transaction>& batch,
                                    const LockOptions& opts, LockAudit* audit) {
  if (batch.empty()) {
    ExecutionReport report;
    report.chains.assign(g.shard_count(), {});
    return report;
  }
  Engine engine(g, batch, audit);
  ExecutionReport report = engine.run(opts);
  if (audit) {
    auto v = validate_lock_intervals(audit->intervals);
    audit->violations.insert(audit->violations.end(), v.begin(), v.end());
  }
  return report;
}

std::vector<std::string> validate_lock_intervals(const std::vector<HoldInterval>& intervals) {
  std::vector<std::string> violations;
  std::map<ObjectId, std::vector<const HoldInterval*>> by_object;
  for (const auto& iv : intervals) by_object[iv.object].push_back(&iv);
  for (auto& [obj, list] : by_object) {
    std::sort(list.begin(), list.end(),
              [](const HoldInterval* a, const HoldInterval* b) { return a->from < b->from; });
    for (size_t i = 1; i < list.size(); ++i) {
      if (list[i]->from < list[i - 1]->to)
        violations.push_back("object at " + shard_name(owner_of(obj)) + " held by " +
                             std::to_string(list[i - 1]->txn) + " and " +
                             std::to_string(list[i]->txn) + " in overlapping rounds");
    }
  }
  return violations;
}

}  // namespace shardsched
