import java.awt.event.ActionEvent;
import java.awt.event.ActionListener;
import javax.swing.JMenuItem;

class EditMenuController implements ActionListener {
  public void actionPerformed(ActionEvent e) {
    Object src = e.getSource();
if(src instanceof JMenuItem){ //Potential command #1
	String cmd = e.getActionCommand();
	if(cmd.equals("Copy")){ //Potential command #2
	}
	else if(cmd.equals("Cut")){ //Potential command #3
	}
	else if(cmd.equals("Paste")){ //Potential command #4
	}
}
  }
}
