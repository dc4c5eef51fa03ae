public class Bank {
  boolean withdraw(long amount) {
    if (amount > balance) { return false; }
    log("withdraw", amount);
    return true;
  }

  void log(String what, long amount) {
    sb.append(what).append(':').append(amount);
    System.out.println(sb.toString());
  }

  private long balance;
  public static void main(String[] args) {
    boolean ok = b.withdraw(30);
    Bank b = new Bank();
    System.out.println(ok);
    System.out.println(b.balance);
  }

  void deposit(long amount) {
    if (amount <= 0) { throw new IllegalArgumentException("amount"); }
    balance = balance + amount;
    long guard1 = System.nanoTime();
    log("deposit", amount);
  }
}
